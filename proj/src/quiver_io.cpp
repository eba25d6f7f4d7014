#include "quivdual/quiver_io.hpp"
#include "quivdual/errors.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace qd {

namespace {

Json coeff_json(const Q &c) {
    if (c.get_den() == 1 && c.get_num().fits_slong_p()) return c.get_num().get_si();
    return to_string(c);
}

Q coeff_from(const Json &j) {
    if (j.is_number_integer()) return Q(j.get<long>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw Error(Errc::parse, "potential coefficient must be an integer or \"p/q\"");
}

template <class T> T field(const Json &j, const char *key) {
    if (!j.is_object() || !j.contains(key)) throw Error(Errc::parse, std::string("missing field \"") + key + "\"");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception &) {
        throw Error(Errc::parse, std::string("field \"") + key + "\" has the wrong type");
    }
}

} // namespace

Json quiver_to_json(const Quiver &q) {
    Json j;
    j["nodes"] = Json::array();
    for (auto &[id, n] : q.nodes()) j["nodes"].push_back({{"id", id}, {"rank", n.rank}, {"framed", n.framed}});
    j["arrows"] = Json::array();
    for (auto &[e, m] : q.arrows()) j["arrows"].push_back({{"src", e.first}, {"dst", e.second}, {"mult", m}});
    j["potential"] = Json::array();
    for (auto &t : canonical_potential(q.potential, false)) {
        Json cyc = Json::array();
        for (auto &[s, d] : t.path) cyc.push_back({s, d});
        j["potential"].push_back({{"coeff", coeff_json(t.coeff)}, {"cycle", cyc}});
    }
    j["meta"] = {{"phase", q.meta.phase}, {"family", q.meta.family}};
    return j;
}

Quiver quiver_from_json(const Json &j) {
    if (!j.is_object()) throw Error(Errc::parse, "quiver must be a JSON object");
    Quiver q;
    if (!j.contains("nodes") || !j["nodes"].is_array()) throw Error(Errc::parse, "missing \"nodes\" array");
    for (auto &n : j["nodes"])
        q.add_node(field<int>(n, "id"), field<int>(n, "rank"), n.contains("framed") ? field<bool>(n, "framed") : false);
    if (j.contains("arrows")) {
        if (!j["arrows"].is_array()) throw Error(Errc::parse, "\"arrows\" must be an array");
        for (auto &a : j["arrows"])
            q.add_arrow(field<int>(a, "src"), field<int>(a, "dst"), a.contains("mult") ? field<int>(a, "mult") : 1);
    }
    if (j.contains("potential")) {
        if (!j["potential"].is_array()) throw Error(Errc::parse, "\"potential\" must be an array");
        for (auto &t : j["potential"]) {
            CycleWord w;
            w.coeff = t.contains("coeff") ? coeff_from(t["coeff"]) : Q(1);
            for (auto &e : field<std::vector<std::vector<int>>>(t, "cycle")) {
                if (e.size() != 2) throw Error(Errc::parse, "cycle entries are [src,dst] pairs");
                w.path.push_back({e[0], e[1]});
            }
            q.potential.push_back(w);
        }
        q.potential = canonical_potential(q.potential, false);
    }
    if (j.contains("meta")) {
        auto &m = j["meta"];
        if (m.contains("phase")) q.meta.phase = field<std::vector<std::string>>(m, "phase");
        if (m.contains("family")) q.meta.family = field<std::string>(m, "family");
    }
    q.validate();
    return q;
}

Quiver parse_quiver(const std::string &text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') ++line, col = 1;
            else ++col;
        }
        throw Error(Errc::parse, "line " + std::to_string(line) + ", column " + std::to_string(col) +
                                     ": malformed JSON");
    }
    return quiver_from_json(j);
}

std::string emit_quiver(const Quiver &q) { return quiver_to_json(q).dump(2) + "\n"; }

Json kahler_map_to_json(const KahlerMap &m, const std::vector<std::string> &target_vars,
                        const std::vector<std::string> &source_vars) {
    Json j;
    j["images"] = Json::object();
    for (std::size_t k = 0; k < m.source_size(); ++k)
        j["images"][source_vars[k]] = format(image(m, k), target_vars);
    j["rows"] = m.rows;
    j["sign"] = m.sign;
    j["units"] = Json::array();
    for (auto &u : m.units) j["units"].push_back({{"var", target_vars[std::size_t(u.var)]}, {"sign", u.sign}});
    j["unit_exp"] = m.unit_exp;
    return j;
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::usage, "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file_atomic(const std::string &path, const std::string &content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(Errc::usage, "cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out) throw Error(Errc::usage, "write failed for " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw Error(Errc::usage, "cannot rename into " + path + ": " + ec.message());
    }
}

} // namespace qd
