#include "qmin/state_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "qmin/error.hpp"

namespace qmin {
namespace {

[[noreturn]] void malformed(const std::string& what) {
    throw ValidationError(ValidationKind::Malformed, "state file: " + what);
}

std::size_t positive_dim(const nlohmann::json& v) {
    if (!v.is_number_integer() || v.get<long long>() < 1)
        malformed("dims entries must be positive integers");
    return v.get<std::size_t>();
}

} // namespace

DensityMatrix state_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("dims") || !j.contains("matrix"))
        malformed("expected an object with \"dims\" and \"matrix\"");
    const auto& jd = j.at("dims");
    if (!jd.is_array() || jd.size() != 2)
        malformed("\"dims\" must be [m, n]");
    const Dims dims{positive_dim(jd[0]), positive_dim(jd[1])};
    const auto d = dims.total();

    const auto& jm = j.at("matrix");
    if (!jm.is_array() || jm.size() != d)
        malformed("\"matrix\" must have m*n rows");
    ComplexMatrix m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t r = 0; r < d; ++r) {
        const auto& row = jm[r];
        if (!row.is_array() || row.size() != d)
            malformed("row " + std::to_string(r) + " must have m*n entries");
        for (std::size_t c = 0; c < d; ++c) {
            const auto& z = row[c];
            if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number())
                malformed("entries must be [re, im] number pairs");
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                Complex(z[0].get<double>(), z[1].get<double>());
        }
    }
    return density_from_matrix(m, dims);
}

nlohmann::json state_to_json(const DensityMatrix& rho) {
    const ComplexMatrix& m = rho.matrix();
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            row.push_back({m(r, c).real(), m(r, c).imag()});
        rows.push_back(std::move(row));
    }
    return {{"dims", {rho.dims().m, rho.dims().n}}, {"matrix", std::move(rows)}};
}

DensityMatrix parse_state(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        malformed(e.what());
    }
    return state_from_json(j);
}

DensityMatrix load_state(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        malformed("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_state(buf.str());
}

void save_state(const DensityMatrix& rho, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out)
        throw Error("cannot write " + path.string());
    out << state_to_json(rho).dump() << '\n';
}

} // namespace qmin
