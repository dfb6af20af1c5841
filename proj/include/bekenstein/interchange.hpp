#pragma once

#include <string>

#include <json.hpp>

#include "bekenstein/modular_entropy.hpp"
#include "bekenstein/stdsubspace.hpp"

namespace bk {

using json = nlohmann::json;

// complex numbers are [re, im]; matrices are lists of rows
json to_json(const cvec& v);
json to_json(const cmat& m);
json to_json(const rvec& v);
cvec cvec_from_json(const json& j);
cmat cmat_from_json(const json& j);
rvec rvec_from_json(const json& j);

json to_json(const RealSubspace& h);
RealSubspace real_subspace_from_json(const json& j);

json to_json(const ModularData& md);
ModularData modular_data_from_json(const json& j);

json to_json(const DensityMatrix& rho);
DensityMatrix density_from_json(const json& j);

json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

} // namespace bk
