#include "quivdual/report_io.hpp"
#include "quivdual/errors.hpp"

namespace qd {

Json series_to_json(const LaurentSeries &s) {
    Json j;
    j["vars"] = s.vars();
    j["box"] = Json::array();
    for (auto &i : s.box()) j["box"].push_back({i.lo, i.hi});
    j["terms"] = Json::array();
    for (auto &[e, c] : s.terms()) j["terms"].push_back({{"e", e}, {"c", to_string(c)}});
    return j;
}

LaurentSeries series_from_json(const Json &j) {
    try {
        Box box;
        for (auto &b : j.at("box")) box.push_back({b.at(0).get<long>(), b.at(1).get<long>()});
        LaurentSeries s(j.at("vars").get<std::vector<std::string>>(), box);
        for (auto &t : j.at("terms")) {
            Exponent e = t.at("e").get<Exponent>();
            if (!s.in_box(e)) throw Error(Errc::parse, "series term outside its box");
            s.add(e, parse_rational(t.at("c").get<std::string>()));
        }
        return s;
    } catch (const nlohmann::json::exception &e) {
        throw Error(Errc::parse, std::string("series: ") + e.what());
    }
}

Json fixed_point_to_json(const FixedPoint &p) {
    Json roots = Json::array();
    for (auto &r : p.roots) {
        Json labels = Json::array();
        for (int x : r) labels.push_back(x + 1);
        roots.push_back(labels);
    }
    return {{"family", family_name(p.family)}, {"subsets", roots}};
}

Json point_to_json(const EquivariantPoint &p, std::uint64_t seed, const std::vector<std::string> &names) {
    Json v = Json::object();
    for (std::size_t i = 0; i < p.size(); ++i) v[names[i]] = to_string(p[i]);
    return {{"seed", seed}, {"values", v}};
}

Json report_to_json(const CheckReport &r) {
    Json j;
    j["identity"] = r.identity;
    j["ranks"] = r.ranks;
    if (!r.kahler_case.empty()) j["kahler_case"] = r.kahler_case;
    j["box"] = r.box;
    j["trials"] = r.trials;
    j["seed"] = r.seed;
    j["verdict"] = r.pass ? "PASS" : "FAIL";
    if (!r.error.empty()) j["error"] = r.error;
    if (!r.map.empty()) j["map"] = r.map;
    if (!r.prefactor.empty()) j["prefactor"] = r.prefactor;
    if (!r.table.empty()) {
        j["table"] = r.table;
        j["table_reproduced"] = r.table_pass;
        j["composition_is_identity"] = r.composition_identity;
    }
    if (r.fixed_points) {
        j["fixed_points"] = r.fixed_points;
        j["pairs_checked"] = r.pairs.size();
        std::size_t passed = 0;
        for (auto &p : r.pairs) passed += p.pass;
        j["pairs_passed"] = passed;
    }
    if (r.guard_run) j["prefactor_guard"] = {{"forced_unit_fails", r.guard_failed}, {"detail", r.guard_detail}};
    if (!r.pairs.empty()) {
        j["pairs"] = Json::array();
        for (auto &p : r.pairs) {
            Json pj;
            pj["index"] = p.index;
            pj["source"] = p.source;
            pj["target"] = p.target;
            pj["verdict"] = p.pass ? "PASS" : "FAIL";
            if (p.audit_run) pj["boundary_slack"] = p.audit_pass ? "PASS" : "FAIL";
            if (!p.error.empty()) pj["error"] = p.error;
            pj["trials"] = Json::array();
            for (auto &t : p.trials) {
                Json tj{{"trial", t.trial}, {"seed", t.seed}, {"terms", t.terms}, {"verdict", t.pass ? "PASS" : "FAIL"}};
                if (t.mismatch)
                    tj["mismatch"] = {{"e", *t.mismatch}, {"left", t.left}, {"right", t.right}};
                pj["trials"].push_back(tj);
            }
            j["pairs"].push_back(pj);
        }
    }
    if (!r.steps.empty()) {
        j["steps"] = Json::array();
        for (auto &s : r.steps) j["steps"].push_back(report_to_json(s));
    }
    return j;
}

std::string dump(const Json &j) { return j.dump(2) + "\n"; }

} // namespace qd
