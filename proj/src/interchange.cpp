#include "bekenstein/interchange.hpp"

#include <fstream>

namespace bk {

namespace {

json cplx_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx cplx_from(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2) throw input_error("complex number must be [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

void expect(const json& j, const char* type) {
    if (!j.is_object() || j.value("type", "") != type) throw input_error(std::string("expected a ") + type + " object");
}

} // namespace

json to_json(const cvec& v) {
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(cplx_json(v(i)));
    return a;
}

json to_json(const cmat& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json r = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) r.push_back(cplx_json(m(i, j)));
        rows.push_back(r);
    }
    return rows;
}

json to_json(const rvec& v) { return json(std::vector<double>(v.data(), v.data() + v.size())); }

cvec cvec_from_json(const json& j) {
    if (!j.is_array()) throw input_error("vector must be a list");
    cvec v(j.size());
    for (size_t i = 0; i < j.size(); ++i) v(i) = cplx_from(j[i]);
    return v;
}

cmat cmat_from_json(const json& j) {
    if (!j.is_array()) throw input_error("matrix must be a list of rows");
    const size_t r = j.size(), c = r ? j[0].size() : 0;
    cmat m(r, c);
    for (size_t i = 0; i < r; ++i) {
        if (j[i].size() != c) throw input_error("matrix rows differ in length");
        for (size_t k = 0; k < c; ++k) m(i, k) = cplx_from(j[i][k]);
    }
    return m;
}

rvec rvec_from_json(const json& j) {
    auto v = j.get<std::vector<double>>();
    return Eigen::Map<rvec>(v.data(), v.size());
}

json to_json(const RealSubspace& h) {
    // basis vectors as columns of the stored orthonormal basis
    json cols = json::array();
    for (int k = 0; k < h.real_dim(); ++k) cols.push_back(to_json(cvec(h.basis().col(k))));
    return {{"type", "real_subspace"}, {"ambient_dim", h.ambient_dim()}, {"basis", cols}};
}

RealSubspace real_subspace_from_json(const json& j) {
    expect(j, "real_subspace");
    const int n = j.at("ambient_dim").get<int>();
    const json& cols = j.at("basis");
    cmat b(n, cols.size());
    for (size_t k = 0; k < cols.size(); ++k) {
        cvec v = cvec_from_json(cols[k]);
        if (v.size() != n) throw input_error("basis vector length differs from ambient_dim");
        b.col(k) = v;
    }
    return RealSubspace::from_columns(b);
}

json to_json(const ModularData& md) {
    return {{"type", "modular_data"},
            {"span", to_json(md.span)},
            {"spectrum", to_json(md.spectrum)},
            {"eigvecs", to_json(md.eigvecs)},
            {"j", to_json(md.j.c)},
            {"s", to_json(md.s.c)},
            {"condition", md.condition}};
}

ModularData modular_data_from_json(const json& j) {
    expect(j, "modular_data");
    ModularData md;
    md.span = cmat_from_json(j.at("span"));
    md.spectrum = rvec_from_json(j.at("spectrum"));
    md.eigvecs = cmat_from_json(j.at("eigvecs"));
    md.j = {cmat_from_json(j.at("j"))};
    md.s = {cmat_from_json(j.at("s"))};
    md.condition = j.value("condition", 0.0);
    if (md.spectrum.size() == 0 || md.spectrum.minCoeff() <= 0.0) throw input_error("modular spectrum must be positive");
    cmat dm = md.eigvecs * md.spectrum.cast<cplx>().asDiagonal() * md.eigvecs.adjoint();
    md.delta = HermitianOperator::trusted(0.5 * (dm + dm.adjoint()), md.spectrum.maxCoeff());
    return md;
}

json to_json(const DensityMatrix& rho) { return {{"type", "density_matrix"}, {"matrix", to_json(rho.matrix())}}; }

DensityMatrix density_from_json(const json& j) {
    expect(j, "density_matrix");
    return DensityMatrix(cmat_from_json(j.at("matrix")));
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw input_error(path + ": " + e.what());
    }
}

void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw input_error("cannot write " + path);
    out << j.dump(2) << "\n";
}

} // namespace bk
