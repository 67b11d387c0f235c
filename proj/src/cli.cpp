#include "pin2homalg/cli.hpp"

#include <sstream>

#include "CLI11.hpp"
#include "pin2homalg/json_io.hpp"
#include "pin2homalg/polytope.hpp"

namespace pin2 {

namespace {

bool parse_window(const std::string& s, int& lo, int& hi) {
    auto colon = s.find(':');
    if (colon == std::string::npos) return false;
    lo = std::stoi(s.substr(0, colon));
    hi = std::stoi(s.substr(colon + 1));
    return lo <= hi;
}

std::string canonical_name(const std::string& ref) {
    if (ref == "F" || ref == "trivial_F") return "trivial_F";
    if (ref == "R" || ref == "free_R") return "free_R";
    if (ref == "M2311" || ref == "M_2311") return "M_2311";
    if (ref == "N2311" || ref == "N_2311") return "N_2311";
    if (ref == "HS2311" || ref == "HS_hat_Sigma2311") return "HS_hat_Sigma2311";
    if (ref == "HSbar" || ref == "HSbar_ring") return "HSbar_ring";
    return "";
}

GradedModule resolve_module(const std::string& ref, Precision p, int lo, int hi, int shift_by) {
    std::string name = canonical_name(ref);
    GradedModule m;
    if (!name.empty()) {
        m = catalogue(name, p, lo - shift_by, hi - shift_by).module;
    } else {
        m = module_from_json(read_file(ref));
    }
    if (shift_by) m = shift(m, shift_by);
    return m;
}

std::string render_table(const BigradedTable& t, const std::string& fmt) {
    if (fmt == "csv") return t.render_csv();
    if (fmt == "json") return table_to_json(t) + "\n";
    return t.render_grid();
}

int cmd_tor(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int cmd_ss(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int cmd_massey(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int cmd_check(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int cmd_polytope(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int cmd_tor(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"graded Tor over R"};
    std::string left, right, window = "-20:0", fmt = "grid", method = "both";
    int p = 4, nmax = 8, lshift = 0, rshift = 0;
    app.add_option("--left", left)->required();
    app.add_option("--right", right)->required();
    app.add_option("-p,--precision", p);
    app.add_option("--window", window);
    app.add_option("--nmax", nmax);
    app.add_option("--format", fmt);
    app.add_option("--method", method);
    app.add_option("--left-shift", lshift);
    app.add_option("--right-shift", rshift);
    std::vector<std::string> argv = args;
    try {
        std::vector<const char*> cargv;
        cargv.push_back("tor");
        for (auto& a : argv) cargv.push_back(a.c_str());
        app.parse((int)cargv.size(), cargv.data());
    } catch (const CLI::ParseError& e) {
        err << "tor: " << e.what() << "\n";
        return 3;
    }
    int lo, hi;
    if (!parse_window(window, lo, hi)) {
        err << "tor: bad window\n";
        return 3;
    }
    GradedModule M = resolve_module(left, Precision(p), lo, hi, lshift);
    GradedModule N = resolve_module(right, Precision(p), lo, hi, rshift);
    TorParams tp;
    tp.n_max = nmax;
    tp.lo = lo;
    tp.hi = hi;
    if (method == "bar" || method == "both") {
        BigradedTable tb = tor(M, N, TorMethod::bar, tp);
        out << "# method: bar\n" << render_table(tb, fmt);
        if (method == "both") {
            BigradedTable tr = tor(M, N, TorMethod::resolution, tp);
            out << "# method: resolution\n" << render_table(tr, fmt);
            bool ok = true;
            for (auto& [ij, n] : tb.entries) {
                if (!tb.is_certified(ij.first, ij.second) ||
                    !tr.is_certified(ij.first, ij.second))
                    continue;
                if (tr.dim(ij.first, ij.second) != n) ok = false;
            }
            for (auto& [ij, n] : tr.entries) {
                if (!tb.is_certified(ij.first, ij.second) ||
                    !tr.is_certified(ij.first, ij.second))
                    continue;
                if (tb.dim(ij.first, ij.second) != n) ok = false;
            }
            out << "# cross-check: " << (ok ? "PASS" : "FAIL")
                << " (bar vs resolution on certified entries)\n";
            if (!ok) return 2;
        }
    } else {
        BigradedTable tr = tor(M, N, TorMethod::resolution, tp);
        out << "# method: resolution\n" << render_table(tr, fmt);
    }
    return 0;
}

int cmd_ss(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Eilenberg-Moore spectral sequence of the box filtration"};
    std::string left, right, window = "-14:2", fmt = "grid", pattern_file, target, table_file;
    int p = 3, nmax = 5, rmax = 3, lshift = 0, rshift = 0;
    app.add_option("--left", left);
    app.add_option("--right", right);
    app.add_option("-p,--precision", p);
    app.add_option("--window", window);
    app.add_option("--nmax", nmax);
    app.add_option("--rmax", rmax);
    app.add_option("--format", fmt);
    app.add_option("--pattern", pattern_file);
    app.add_option("--target", target);
    app.add_option("--table", table_file);
    app.add_option("--left-shift", lshift);
    app.add_option("--right-shift", rshift);
    try {
        std::vector<const char*> cargv;
        cargv.push_back("ss");
        for (auto& a : args) cargv.push_back(a.c_str());
        app.parse((int)cargv.size(), cargv.data());
    } catch (const CLI::ParseError& e) {
        err << "ss: " << e.what() << "\n";
        return 3;
    }
    int lo, hi;
    if (!parse_window(window, lo, hi)) {
        err << "ss: bad window\n";
        return 3;
    }

    BigradedTable base;
    if (!table_file.empty()) {
        base = table_from_json(read_file(table_file));
        out << "# table: " << table_file << "\n" << render_table(base, fmt);
    } else {
        if (left.empty() || right.empty()) {
            err << "ss: need --left/--right or --table\n";
            return 3;
        }
        GradedModule M = resolve_module(left, Precision(p), lo, hi, lshift);
        GradedModule N = resolve_module(right, Precision(p), lo, hi, rshift);
        auto model = std::make_shared<AInfAlgebra>(strict_model_R(Precision(p), lo - hi, 0));
        AInfModule AM = strict_module(model, M, Side::right);
        AInfModule AN = strict_module(model, N, Side::left);
        EmResult res = em_ss(AM, AN, M, N, nmax, rmax, lo, hi);
        for (auto& pg : res.pages_list) {
            out << "# E^" << pg.r << "\n" << render_table(pg.table, fmt);
            for (auto& [pt, m] : pg.dr)
                if (m.rows() && !m.is_zero())
                    out << "  (" << pt.first << "," << (pt.second - pt.first) << ") -" << pg.r
                        << "-> (" << (pt.first - pg.r) << ","
                        << (pt.second - 1 - (pt.first - pg.r)) << "): rank " << rank(m) << "\n";
            if (pg.measured_bidegree)
                out << "# measured d_" << pg.r << " bidegree: (" << pg.measured_bidegree->first
                    << "," << pg.measured_bidegree->second << ")\n";
        }
        out << "# E2 vs Tor: " << (res.e2_matches_tor ? "PASS" : "FAIL") << "\n";
        for (auto& m : res.mismatches) out << "#   " << m << "\n";
        base = res.pages_list.size() >= 2 ? res.pages_list[1].table
                                          : res.pages_list.back().table;
        if (!res.e2_matches_tor) return 2;
    }

    if (!pattern_file.empty()) {
        DifferentialPattern pat = pattern_from_json(read_file(pattern_file));
        try {
            BigradedTable after = apply_hypothesized(base, pat);
            out << "# after d_" << pat.r << " pattern\n" << render_table(after, fmt);
            base = after;
        } catch (const std::invalid_argument& e) {
            err << "ss: pattern rejected: " << e.what() << "\n";
            return 3;
        }
    }
    if (!target.empty()) {
        GradedModule T = resolve_module(target, Precision(p), lo, hi, 0);
        std::map<int, int> dims;
        for (auto& [d, n] : T.space.dims) dims[d] = n;
        EInftyReport r = e_infty_vs_target(base, dims, lo, hi);
        out << "# E_inf vs target " << target << ": " << (r.pass ? "PASS" : "FAIL") << "\n";
        for (auto& l : r.lines) out << "#   " << l << "\n";
        if (!r.pass) return 2;
    }
    return 0;
}

int cmd_massey(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Massey products"};
    std::string alg;
    std::vector<std::string> cycles;
    int p = 3;
    uint64_t seed = 0;
    std::string window = "-16:0";
    app.add_option("algebra", alg)->required();
    app.add_option("cycles", cycles)->required()->expected(3, 4);
    app.add_option("-p,--precision", p);
    app.add_option("--seed", seed);
    app.add_option("--window", window);
    try {
        std::vector<const char*> cargv;
        cargv.push_back("massey");
        for (auto& a : args) cargv.push_back(a.c_str());
        app.parse((int)cargv.size(), cargv.data());
    } catch (const CLI::ParseError& e) {
        err << "massey: " << e.what() << "\n";
        return 3;
    }
    int lo, hi;
    parse_window(window, lo, hi);
    AInfAlgebra A;
    if (alg == "candidate_R")
        A = candidate_ainf_R(Precision(p), lo, hi);
    else if (alg == "strict_R")
        A = strict_model_R(Precision(p), lo, hi);
    else
        A = algebra_from_json(read_file(alg));

    auto cyc = [&](const std::string& s) -> Chain {
        if (auto m = parse_monomial(s)) {
            Chain c = monomial_chain(A, *m);
            if (!c.empty()) return c;
        }
        /* fall back to a basis label */
        for (auto& [d, v] : A.space.labels)
            for (int i = 0; i < (int)v.size(); ++i)
                if (v[i] == s) return {BasisRef{d, i}};
        throw std::invalid_argument("unknown cycle " + s);
    };

    try {
        if (cycles.size() == 3) {
            MasseyResult r = massey3(A, cyc(cycles[0]), cyc(cycles[1]), cyc(cycles[2]), seed);
            if (!r.defined) {
                out << "undefined: " << r.reason << "\n";
                return 2;
            }
            out << "degree " << r.degree << ", representative " << chain_str(r.representative, A.space)
                << ", indeterminacy rank " << r.indeterminacy.cols() << "\n";
            out << (r.class_is_zero_mod_indeterminacy() ? "class: zero (mod indeterminacy)\n"
                                                        : "class: nonzero\n");
        } else {
            Massey4Result r =
                massey4(A, cyc(cycles[0]), cyc(cycles[1]), cyc(cycles[2]), cyc(cycles[3]), seed);
            if (!r.defined) {
                out << "undefined: " << r.reason << "\n";
                return 2;
            }
            out << "degree " << r.degree << ", "
                << (r.enumerated ? std::to_string(r.classes.size()) + " classes"
                                 : "representative + variation")
                << "\n";
            /* name each class through the homology basis of the model */
            HomologyData h = homology(A.mu1_map());
            if (r.enumerated) {
                for (auto& cls : r.classes) {
                    Chain c;
                    for (int k = 0; k < (int)cls.size(); ++k)
                        if (cls[k]) c = chain_add(c, h.rep_chain(r.degree, k));
                    out << "  " << chain_str(c, A.space) << "\n";
                }
            }
        }
    } catch (const std::invalid_argument& e) {
        err << "massey: " << e.what() << "\n";
        return 3;
    }
    return 0;
}

int cmd_check(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"A-infinity relation check"};
    std::string file;
    int nmax = 4;
    app.add_option("file", file)->required();
    app.add_option("--nmax", nmax);
    try {
        std::vector<const char*> cargv;
        cargv.push_back("check");
        for (auto& a : args) cargv.push_back(a.c_str());
        app.parse((int)cargv.size(), cargv.data());
    } catch (const CLI::ParseError& e) {
        err << "check: " << e.what() << "\n";
        return 3;
    }
    std::string text = file == "candidate_R" ? "" : read_file(file);
    CheckReport rep;
    if (file == "candidate_R") {
        AInfAlgebra a = candidate_ainf_R(Precision(2), -14, 0);
        rep = check_algebra_relations(a, 7);
    } else if (text.find("\"type\": \"module\"") != std::string::npos ||
               text.find("\"type\":\"module\"") != std::string::npos) {
        AInfModule m = ainf_module_from_json(text);
        rep = m.side == Side::bimodule ? check_bimodule_relations(m, nmax)
                                       : check_module_relations(m, nmax);
    } else {
        AInfAlgebra a = algebra_from_json(text);
        rep = check_algebra_relations(a, nmax);
    }
    out << check_report_to_json(rep) << "\n";
    return rep.pass ? 0 : 2;
}

int cmd_polytope(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"associahedron / multiplihedron queries"};
    std::string kind;
    int n = 4;
    bool fvec = false, facets = false, cubes = false;
    int rel = -1;
    app.add_option("kind", kind)->required();
    app.add_option("n", n)->required();
    app.add_flag("--f-vector", fvec);
    app.add_flag("--facets", facets);
    app.add_flag("--cubes", cubes);
    app.add_option("--relation-terms", rel);
    try {
        std::vector<const char*> cargv;
        cargv.push_back("polytope");
        for (auto& a : args) cargv.push_back(a.c_str());
        app.parse((int)cargv.size(), cargv.data());
    } catch (const CLI::ParseError& e) {
        err << "polytope: " << e.what() << "\n";
        return 3;
    }
    if (kind == "K") {
        if (fvec) {
            auto f = f_vector_K(n);
            for (size_t i = 0; i < f.size(); ++i) out << (i ? "," : "") << f[i];
            out << "\n";
        }
        if (facets) {
            for (auto& fc : facets_K(n))
                out << "{" << fc.interval.lo << ".." << fc.interval.hi << "} ~ K" << fc.inner
                    << " x K" << fc.outer << "\n";
        }
        if (cubes) {
            auto c = cube_decomposition_K(n);
            out << c.size() << " cubes of dimension " << (n - 2) << "\n";
            for (auto& f : c) out << f.parenthesization() << "\n";
        }
    } else if (kind == "J") {
        if (facets || fvec) {
            auto fs = facets_J(n);
            out << fs.size() << " facets\n";
            if (facets)
                for (auto& f : fs) out << f.str() << "\n";
        }
    } else {
        err << "polytope: kind must be K or J\n";
        return 3;
    }
    if (rel >= 1) {
        auto terms = relation_terms(rel);
        out << terms.size() << " terms\n";
        for (auto& t : terms)
            out << "(" << t.i << "," << t.j << "," << t.l << ")\n";
    }
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    if (args.empty()) {
        err << "usage: pin2homalg <tor|ss|massey|check|polytope> ...\n";
        return 3;
    }
    std::vector<std::string> rest(args.begin() + 1, args.end());
    try {
        if (args[0] == "tor") return cmd_tor(rest, out, err);
        if (args[0] == "ss") return cmd_ss(rest, out, err);
        if (args[0] == "massey") return cmd_massey(rest, out, err);
        if (args[0] == "check") return cmd_check(rest, out, err);
        if (args[0] == "polytope") return cmd_polytope(rest, out, err);
    } catch (const invariant_error& e) {
        err << "invariant failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }
    err << "unknown command " << args[0] << "\n";
    return 3;
}

}  // namespace pin2
