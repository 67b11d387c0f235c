#include "pin2homalg/json_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace pin2 {

using nlohmann::json;

namespace {

json map_blocks(const GradedMap& g) {
    json out = json::object();
    for (auto& [d, b] : g.blocks) {
        if (b.is_zero()) continue;
        json rows = json::array();
        for (int r = 0; r < b.rows(); ++r) {
            json row = json::array();
            for (int c = 0; c < b.cols(); ++c) row.push_back(b.get(r, c) ? 1 : 0);
            rows.push_back(row);
        }
        out[std::to_string(d)] = rows;
    }
    return out;
}

void blocks_from_json(const json& j, GradedMap& g) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        int d = std::stoi(it.key());
        const json& rows = it.value();
        int nr = (int)rows.size();
        int nc = nr ? (int)rows[0].size() : 0;
        BitMatrix b(nr, nc);
        for (int r = 0; r < nr; ++r)
            for (int c = 0; c < nc; ++c)
                if (rows[r][c].get<int>()) b.set(r, c, true);
        g.blocks[d] = b;
    }
}

json space_to_json(const GradedVectorSpace& s) {
    json dims = json::object();
    for (auto& [d, n] : s.dims) dims[std::to_string(d)] = n;
    json out;
    out["window"] = {s.lo, s.hi};
    out["dims"] = dims;
    if (!s.labels.empty()) {
        json lab = json::object();
        for (auto& [d, v] : s.labels) lab[std::to_string(d)] = v;
        out["labels"] = lab;
    }
    return out;
}

GradedVectorSpace space_from_json(const json& j) {
    GradedVectorSpace s;
    s.lo = j["window"][0].get<int>();
    s.hi = j["window"][1].get<int>();
    for (auto it = j["dims"].begin(); it != j["dims"].end(); ++it)
        s.dims[std::stoi(it.key())] = it.value().get<int>();
    if (j.contains("labels"))
        for (auto it = j["labels"].begin(); it != j["labels"].end(); ++it)
            s.labels[std::stoi(it.key())] = it.value().get<std::vector<std::string>>();
    return s;
}

}  // namespace

std::string module_to_json(const GradedModule& m) {
    json out;
    out["offset"] = m.offset.str();
    json sp = space_to_json(m.space);
    out["window"] = sp["window"];
    out["dims"] = sp["dims"];
    if (sp.contains("labels")) out["labels"] = sp["labels"];
    out["V"] = map_blocks(m.actV);
    out["Q"] = map_blocks(m.actQ);
    out["precision"] = m.prec.p;
    return out.dump(1);
}

GradedModule module_from_json(const std::string& text) {
    json j = json::parse(text);
    GradedModule m;
    m.prec = Precision(j["precision"].get<int>());
    json sp;
    sp["window"] = j["window"];
    sp["dims"] = j["dims"];
    if (j.contains("labels")) sp["labels"] = j["labels"];
    m.space = space_from_json(sp);
    if (j.contains("offset")) {
        std::string o = j["offset"].get<std::string>();
        auto slash = o.find('/');
        if (slash == std::string::npos)
            m.offset = Rat(std::stoll(o));
        else
            m.offset = Rat(std::stoll(o.substr(0, slash)), std::stoll(o.substr(slash + 1)));
    }
    m.actV = zero_map(m.space, m.space, -4);
    m.actQ = zero_map(m.space, m.space, -1);
    blocks_from_json(j["V"], m.actV);
    blocks_from_json(j["Q"], m.actQ);
    m.actV.check_shapes("module_from_json V");
    m.actQ.check_shapes("module_from_json Q");
    return m;
}

namespace {

/* basis ids are labels when present, else "e(deg,idx)" */
std::string basis_id(const GradedVectorSpace& s, const BasisRef& b) {
    auto it = s.labels.find(b.deg);
    if (it != s.labels.end() && b.idx < (int)it->second.size()) return it->second[b.idx];
    return "e(" + std::to_string(b.deg) + "," + std::to_string(b.idx) + ")";
}

BasisRef basis_from_id(const GradedVectorSpace& s, const std::string& id) {
    for (auto& [d, v] : s.labels)
        for (int i = 0; i < (int)v.size(); ++i)
            if (v[i] == id) return {d, i};
    int d, i;
    if (sscanf(id.c_str(), "e(%d,%d)", &d, &i) == 2) return {d, i};
    throw std::invalid_argument("unknown basis id: " + id);
}

json ops_to_json(const GradedVectorSpace& domain_space, const GradedVectorSpace& out_space,
                 const std::map<int, OpTable>& ops, const GradedVectorSpace* mod_space,
                 bool module_first) {
    /* for module ops, slot 0 (module_first) or the last slot refers to the
    ** module space; remaining slots refer to the algebra space */
    json out = json::object();
    for (auto& [i, tab] : ops) {
        json lst = json::array();
        for (auto& [key, ch] : tab.entries) {
            json e;
            json ins = json::array();
            for (size_t k = 0; k < key.size(); ++k) {
                const GradedVectorSpace* sp = &domain_space;
                if (mod_space) {
                    bool is_mod = module_first ? (k == 0) : (k + 1 == key.size());
                    sp = is_mod ? mod_space : &domain_space;
                }
                ins.push_back(basis_id(*sp, key[k]));
            }
            e["inputs"] = ins;
            json os = json::array();
            for (auto& b : ch) os.push_back(basis_id(out_space, b));
            e["output"] = os;
            lst.push_back(e);
        }
        out[std::to_string(i)] = lst;
    }
    return out;
}

void ops_from_json(const json& j, const GradedVectorSpace& alg_space,
                   const GradedVectorSpace& out_space, std::map<int, OpTable>& ops,
                   const GradedVectorSpace* mod_space, bool module_first) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        int i = std::stoi(it.key());
        OpTable t;
        for (auto& e : it.value()) {
            std::vector<BasisRef> key;
            const auto& ins = e["inputs"];
            for (size_t k = 0; k < ins.size(); ++k) {
                const GradedVectorSpace* sp = &alg_space;
                if (mod_space) {
                    bool is_mod = module_first ? (k == 0) : (k + 1 == ins.size());
                    sp = is_mod ? mod_space : &alg_space;
                }
                key.push_back(basis_from_id(*sp, ins[k].get<std::string>()));
            }
            Chain ch;
            for (auto& o : e["output"]) ch.push_back(basis_from_id(out_space, o.get<std::string>()));
            std::sort(ch.begin(), ch.end());
            t.entries[key] = ch;
        }
        ops[i] = t;
    }
}

}  // namespace

std::string algebra_to_json(const AInfAlgebra& a) {
    json out;
    out["type"] = "algebra";
    out["space"] = space_to_json(a.space);
    out["i_max"] = a.i_max;
    out["ops"] = ops_to_json(a.space, a.space, a.mu, nullptr, false);
    return out.dump(1);
}

AInfAlgebra algebra_from_json(const std::string& text) {
    json j = json::parse(text);
    AInfAlgebra a;
    a.space = space_from_json(j["space"]);
    a.i_max = j.value("i_max", 2);
    ops_from_json(j["ops"], a.space, a.space, a.mu, nullptr, false);
    return a;
}

std::string ainf_module_to_json(const AInfModule& m) {
    json out;
    out["type"] = "module";
    out["side"] = m.side == Side::right ? "right" : (m.side == Side::left ? "left" : "bimodule");
    out["space"] = space_to_json(m.space);
    out["algebra"] = json::parse(algebra_to_json(*m.algebra));
    out["ops"] =
        ops_to_json(m.algebra->space, m.space, m.m, &m.space, m.side != Side::left);
    return out.dump(1);
}

AInfModule ainf_module_from_json(const std::string& text) {
    json j = json::parse(text);
    AInfModule m;
    std::string side = j.value("side", "right");
    m.side = side == "right" ? Side::right : (side == "left" ? Side::left : Side::bimodule);
    m.space = space_from_json(j["space"]);
    auto alg = std::make_shared<AInfAlgebra>(algebra_from_json(j["algebra"].dump()));
    m.algebra = alg;
    ops_from_json(j["ops"], alg->space, m.space, m.m, &m.space, m.side != Side::left);
    return m;
}

std::string table_to_json(const BigradedTable& t) {
    json out;
    out["provenance"] = t.provenance;
    json es = json::array();
    for (auto& [ij, n] : t.entries) {
        json e;
        e["i"] = ij.first;
        e["j"] = ij.second;
        e["dim"] = n;
        e["certified"] = t.is_certified(ij.first, ij.second);
        es.push_back(e);
    }
    out["entries"] = es;
    return out.dump(1);
}

BigradedTable table_from_json(const std::string& text) {
    json j = json::parse(text);
    BigradedTable t;
    t.provenance = j.value("provenance", "");
    for (auto& e : j["entries"])
        t.set(e["i"].get<int>(), e["j"].get<int>(), e["dim"].get<int>(),
              e.value("certified", true));
    return t;
}

DifferentialPattern pattern_from_json(const std::string& text) {
    json j = json::parse(text);
    DifferentialPattern p;
    p.r = j["r"].get<int>();
    p.di = j["bidegree"][0].get<int>();
    p.dj = j["bidegree"][1].get<int>();
    for (auto& e : j["entries"])
        p.entries.push_back({e["src"][0].get<int>(), e["src"][1].get<int>(),
                             e["tgt"][0].get<int>(), e["tgt"][1].get<int>(),
                             e["rank"].get<int>()});
    return p;
}

std::string pattern_to_json(const DifferentialPattern& p) {
    json out;
    out["r"] = p.r;
    out["bidegree"] = {p.di, p.dj};
    json es = json::array();
    for (auto& e : p.entries) {
        json je;
        je["src"] = {e.src_i, e.src_j};
        je["tgt"] = {e.tgt_i, e.tgt_j};
        je["rank"] = e.rank;
        es.push_back(je);
    }
    out["entries"] = es;
    return out.dump(1);
}

std::string check_report_to_json(const CheckReport& r) {
    json out;
    out["pass"] = r.pass;
    if (!r.pass) {
        out["n"] = r.n;
        out["message"] = r.message;
    }
    return out.dump(1);
}

std::string read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot read " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << text;
}

}  // namespace pin2
