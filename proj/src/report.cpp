#include "thetalab/report.hpp"

#include <sstream>

namespace thetalab {

std::string csv_header() {
    return "g,family,seed,translate_kind,translate_index,n_on,n_off,n_uncertain,bound_thm1,"
           "bound_thm2,hyperplane_rank,sound";
}

std::string csv_row(const CountReport& r, const BoundsVerdict& v) {
    std::ostringstream out;
    out << r.g << ',' << r.family << ',' << r.seed << ',' << r.translate_kind << ','
        << r.translate_index << ',' << r.n_on << ',' << r.n_off << ',' << r.n_uncertain << ','
        << r.bound_thm1 << ',' << r.bound_thm2 << ',' << r.hyperplane_rank << ','
        << (v.sound ? 1 : 0);
    return out.str();
}

namespace {

nlohmann::json matrix_part(const CMatrix& m, bool imag) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(imag ? m(i, j).imag() : m(i, j).real());
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

nlohmann::json report_to_json(const CountReport& r, const BoundsVerdict& v) {
    nlohmann::json doc;
    doc["g"] = r.g;
    doc["family"] = r.family;
    doc["seed"] = r.seed;
    doc["tau"] = {{"g", r.g}, {"re", matrix_part(r.tau, false)}, {"im", matrix_part(r.tau, true)}};

    nlohmann::json re = nlohmann::json::array();
    nlohmann::json im = nlohmann::json::array();
    for (Eigen::Index i = 0; i < r.translate.size(); ++i) {
        re.push_back(r.translate(i).real());
        im.push_back(r.translate(i).imag());
    }
    doc["translate"] = {{"kind", r.translate_kind}, {"index", r.translate_index}, {"re", re}, {"im", im}};
    doc["counts"] = {{"on", r.n_on}, {"off", r.n_off}, {"uncertain", r.n_uncertain}};
    doc["bounds"] = {{"bound_thm1", r.bound_thm1}, {"bound_thm2", r.bound_thm2}};
    doc["hyperplane_rank"] = r.hyperplane_rank;
    doc["verdict"] = {{"general_ok", v.general_ok},
                      {"nonsymmetric_applies", v.nonsymmetric_applies},
                      {"nonsymmetric_ok", v.nonsymmetric_ok},
                      {"sound", v.sound}};
    nlohmann::json points = nlohmann::json::array();
    for (std::size_t i = 0; i < r.verdicts.size(); ++i) {
        const auto x = TorsionPoint::from_index(r.g, static_cast<std::uint32_t>(i));
        points.push_back({{"index", i},
                          {"characteristic", x.characteristic().to_string()},
                          {"state", to_string(r.verdicts[i].state)},
                          {"residual", r.verdicts[i].residual}});
    }
    doc["points"] = points;
    doc["notes"] = r.notes;
    return doc;
}

}  // namespace thetalab
