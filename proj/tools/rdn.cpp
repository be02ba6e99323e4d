// rdn: exact and numeric calculator for Riordan matrices. Subcommands
// cover group arithmetic, truncations and decompositions, eigenvector
// classification, pseudo-involution singular-value analysis, stabilizer
// construction, and raw series evaluation.

#include <chrono>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rdn/eigen.hpp"
#include "rdn/matrix.hpp"
#include "rdn/parser.hpp"
#include "rdn/pseudo.hpp"
#include "rdn/riordan.hpp"
#include "rdn/series.hpp"
#include "rdn/stabilizer.hpp"

using json = nlohmann::ordered_json;
using namespace rdn;

namespace {

struct Options {
    std::string command;
    std::string g_expr, f_expr, h_expr, g2_expr, f2_expr, branch_expr;
    int deg = 16;
    std::string field = "rat";
    double tol = 1e-10;
    double pair_tol = 1e-7;
    bool json_out = false;
    bool chain = false;
    int n = 6;
    int level = 0;
    int row = 0, col = 0;
    unsigned root_order = 2;
};

// ---- scalar/series/matrix serialization ---------------------------------

json to_json(const Rat& v) { return v.get_str(); }

json to_json(const Cplx& v) {
    json j;
    j["re"] = v.real();
    j["im"] = v.imag();
    return j;
}

template <class K>
json to_json(const Series<K>& s) {
    json arr = json::array();
    for (int i = 0; i <= s.degree(); ++i) arr.push_back(to_json(s[i]));
    return arr;
}

template <class K>
json to_json(const Matrix<K>& m) {
    json rows = json::array();
    for (int i = 0; i < m.size(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.size(); ++j) row.push_back(to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string scalar_str(const Rat& v) { return v.get_str(); }
std::string scalar_str(const Cplx& v) { return field_ops<Cplx>::str(v); }

template <class K>
void print_series(std::ostream& os, const std::string& name, const Series<K>& s) {
    os << name << " (deg " << s.degree() << "):\n";
    std::vector<std::string> cells;
    size_t width = 0;
    for (int i = 0; i <= s.degree(); ++i) {
        cells.push_back(scalar_str(s[i]));
        width = std::max(width, cells.back().size());
    }
    for (int i = 0; i <= s.degree(); ++i) {
        os << "  [" << i << "]";
        for (size_t p = std::to_string(i).size(); p < 3; ++p) os << ' ';
        os << std::string(width - cells[size_t(i)].size(), ' ') << cells[size_t(i)]
           << "\n";
    }
}

template <class K>
void print_matrix(std::ostream& os, const std::string& name, const Matrix<K>& m) {
    os << name << " (" << m.size() << "x" << m.size() << "):\n";
    std::vector<std::string> cells;
    size_t width = 0;
    for (int i = 0; i < m.size(); ++i)
        for (int j = 0; j < m.size(); ++j) {
            cells.push_back(scalar_str(m(i, j)));
            width = std::max(width, cells.back().size());
        }
    for (int i = 0; i < m.size(); ++i) {
        os << "  ";
        for (int j = 0; j < m.size(); ++j) {
            const std::string& c = cells[size_t(i) * size_t(m.size()) + size_t(j)];
            os << std::string(width - c.size() + (j ? 2 : 0), ' ') << c;
        }
        os << "\n";
    }
}

// ---- per-command drivers --------------------------------------------------

template <class K>
Series<K> eval_expr(const std::string& text, const Options& opt, const char* what) {
    if (text.empty()) fail("UsageError", std::string("missing expression for ") + what);
    return evaluate<K>(text, opt.deg, opt.tol);
}

template <class K>
RiordanPair<K> eval_pair(const Options& opt) {
    return RiordanPair<K>(eval_expr<K>(opt.g_expr, opt, "-g"),
                          eval_expr<K>(opt.f_expr, opt, "-f"), opt.tol);
}

template <class K>
json witness_json(const LevelEigenvector<K>& w) {
    json j;
    j["level"] = w.level;
    j["eigenvalue"] = to_json(w.eigenvalue);
    j["series"] = to_json(w.h);
    return j;
}

template <class K>
json run_command(const Options& opt, std::vector<std::string>& evidence,
                 std::ostream& text) {
    json result;
    const std::string& cmd = opt.command;

    if (cmd == "series eval") {
        Series<K> s = eval_expr<K>(opt.g_expr, opt, "-g");
        result["series"] = to_json(s);
        SeriesClass cls = classify_series(s, opt.tol);
        result["class"] = cls == SeriesClass::Unit    ? "Unit"
                          : cls == SeriesClass::Delta ? "Delta"
                                                      : "General";
        print_series(text, "series", s);
    } else if (cmd == "series compose") {
        Series<K> h = eval_expr<K>(opt.g_expr, opt, "-g");
        Series<K> f = eval_expr<K>(opt.f_expr, opt, "-f");
        Series<K> s = compose(h, f, opt.tol);
        result["series"] = to_json(s);
        print_series(text, "g(f)", s);
    } else if (cmd == "series invert") {
        Series<K> f = eval_expr<K>(opt.f_expr, opt, "-f");
        Series<K> s = comp_inverse(f, opt.tol);
        result["series"] = to_json(s);
        print_series(text, "compositional inverse", s);
    } else if (cmd == "series root") {
        Series<K> a = eval_expr<K>(opt.g_expr, opt, "-g");
        Series<K> s(0);
        if (a.is_unit(opt.tol)) {
            s = nth_root_unit(a, opt.root_order, opt.tol);
        } else {
            auto ord = a.order(opt.tol);
            if (!ord) fail("OrderMismatch", "cannot take a root of the zero series");
            auto branches = field_kth_roots<K>(a[*ord], opt.root_order);
            if (branches.empty())
                fail("BadBranch", "leading coefficient has no field root");
            s = nth_root_general(a, opt.root_order, branches.front(), opt.tol);
        }
        result["order"] = opt.root_order;
        result["series"] = to_json(s);
        print_series(text, "root", s);
    } else if (cmd == "riordan mul") {
        RiordanPair<K> A = eval_pair<K>(opt);
        RiordanPair<K> B(eval_expr<K>(opt.g2_expr, opt, "--g2"),
                         eval_expr<K>(opt.f2_expr, opt, "--f2"), opt.tol);
        RiordanPair<K> C = multiply(A, B, opt.tol);
        result["g"] = to_json(C.g());
        result["f"] = to_json(C.F());
        print_series(text, "g", C.g());
        print_series(text, "f", C.F());
    } else if (cmd == "riordan inv") {
        RiordanPair<K> A = eval_pair<K>(opt);
        RiordanPair<K> C = inverse(A, opt.tol);
        result["g"] = to_json(C.g());
        result["f"] = to_json(C.F());
        print_series(text, "g", C.g());
        print_series(text, "f", C.F());
    } else if (cmd == "riordan entry") {
        RiordanPair<K> A = eval_pair<K>(opt);
        K v = entry(A, opt.row, opt.col);
        result["i"] = opt.row;
        result["j"] = opt.col;
        result["value"] = to_json(v);
        text << "entry(" << opt.row << "," << opt.col << ") = " << scalar_str(v) << "\n";
    } else if (cmd == "riordan matrix") {
        RiordanPair<K> A = eval_pair<K>(opt);
        Matrix<K> M = truncate(A, opt.n);
        result["n"] = opt.n;
        result["matrix"] = to_json(M);
        print_matrix(text, "truncation", M);
    } else if (cmd == "riordan decompose") {
        RiordanPair<K> A = eval_pair<K>(opt);
        auto [left, right] = almost_decompose(A);
        result["left"] = {{"a", to_json(left.a)},
                          {"g", to_json(left.g)},
                          {"f", to_json(left.F)}};
        result["right"] = {{"a", to_json(right.a)},
                           {"g", to_json(right.g)},
                           {"f", to_json(right.F)}};
        Matrix<K> lm = almost_matrix(left, opt.n);
        Matrix<K> rm = almost_matrix(right, opt.n);
        result["left_matrix"] = to_json(lm);
        result["right_matrix"] = to_json(rm);
        print_matrix(text, "left factor", lm);
        print_matrix(text, "right factor", rm);
        bool exact = matrix_eq(lm * rm, truncate(A, opt.n), opt.tol);
        result["product_matches"] = exact;
        evidence.push_back(exact ? "two-factor-product-reconstructs"
                                 : "two-factor-product-mismatch");
        if (opt.chain) {
            auto factors = almost_factor_chain(A, opt.n);
            json jf = json::array();
            for (const auto& f : factors) jf.push_back(to_json(f));
            result["chain"] = std::move(jf);
            text << "chain of " << factors.size() << " factors\n";
        }
    } else if (cmd == "eigen classify") {
        RiordanPair<K> A = eval_pair<K>(opt);
        EigenReport<K> rep = classify(A, opt.deg, kDefaultOrderBound, opt.tol);
        result["verdict"] = verdict_name(rep.verdict);
        if (rep.verdict == EigenVerdict::Level) result["level"] = rep.level;
        result["trunc_degree"] = rep.trunc_degree;
        json jw = json::array();
        for (const auto& w : rep.witnesses) jw.push_back(witness_json(w));
        result["witnesses"] = std::move(jw);
        if (rep.linearizer) result["linearizer"] = to_json(rep.linearizer->theta);
        if (rep.diagonalizer) {
            result["diagonalizer"] = {{"h", to_json(rep.diagonalizer->h)},
                                      {"theta", to_json(rep.diagonalizer->theta)}};
        }
        for (const auto& e : rep.evidence) evidence.push_back(e);
        text << "verdict: " << verdict_name(rep.verdict);
        if (rep.verdict == EigenVerdict::Level) text << "(" << rep.level << ")";
        text << "\n";
        if (!rep.witnesses.empty() && rep.witnesses.size() <= 4)
            for (const auto& w : rep.witnesses)
                print_series(text, "witness level " + std::to_string(w.level), w.h);
        else if (!rep.witnesses.empty())
            text << rep.witnesses.size() << " witnesses (levels 0.."
                 << rep.witnesses.back().level << ")\n";
    } else if (cmd == "eigen vector") {
        RiordanPair<K> A = eval_pair<K>(opt);
        LevelSolve<K> s = solve_level_k(A, opt.level, opt.deg, opt.tol);
        if (!s.ok())
            fail("Inconsistent", "no eigenvector of level " + std::to_string(opt.level) +
                                     " (row " + std::to_string(s.inconsistent_row) + ")");
        result["witness"] = witness_json(*s.vec);
        print_series(text, "eigenvector level " + std::to_string(opt.level), s.vec->h);
        text << "eigenvalue: " << scalar_str(s.vec->eigenvalue) << "\n";
    } else if (cmd == "eigen diagonalize") {
        RiordanPair<K> A = eval_pair<K>(opt);
        Diagonalizer<K> d = diagonalize(A, opt.deg, kDefaultOrderBound, opt.tol);
        result["h"] = to_json(d.h);
        result["theta"] = to_json(d.theta);
        result["diagonal"] = {{"g0", to_json(A.g0())}, {"f1", to_json(A.f1())}};
        print_series(text, "h", d.h);
        print_series(text, "theta", d.theta);
    } else if (cmd == "eigen linearize") {
        Series<K> F = eval_expr<K>(opt.f_expr, opt, "-f");
        Linearizer<K> L = linearize(F, opt.deg, kDefaultOrderBound, opt.tol);
        result["theta"] = to_json(L.theta);
        result["f1"] = to_json(L.f1);
        print_series(text, "theta", L.theta);
    } else if (cmd == "pseudo check") {
        RiordanPair<K> A = eval_pair<K>(opt);
        bool ok = is_pseudo_involution(A, opt.n, opt.tol);
        result["n"] = opt.n;
        result["pseudo_involution"] = ok;
        text << "pseudo-involution at n=" << opt.n << ": " << (ok ? "yes" : "no") << "\n";
    } else if (cmd == "pseudo svd" || cmd == "pseudo bench") {
        RiordanPair<K> A = eval_pair<K>(opt);
        if (cmd == "pseudo bench") {
            json sizes = json::array();
            for (int n = 2; n <= opt.n; ++n) {
                auto f = svd(to_double(truncate(A, n)));
                auto rr = reciprocal_pairs_check(f.sigma, opt.pair_tol);
                json row;
                row["n"] = n;
                row["max_defect"] = rr.max_defect;
                row["paired"] = rr.ok;
                sizes.push_back(std::move(row));
                text << "n=" << n << " max pairing defect " << rr.max_defect << "\n";
            }
            result["bench"] = std::move(sizes);
        } else {
            auto Ad = to_double(truncate(A, opt.n));
            SvdFactors f = svd(Ad);
            json sig = json::array();
            for (double s : f.sigma) sig.push_back(s);
            result["n"] = opt.n;
            result["sigma"] = std::move(sig);
            auto rr = reciprocal_pairs_check(f.sigma, opt.pair_tol);
            json pairs = json::array();
            for (const auto& p : rr.pairs)
                pairs.push_back({{"i", p.i},
                                 {"j", p.j},
                                 {"product", p.product},
                                 {"defect", p.defect}});
            result["reciprocal_pairs"] = {{"ok", rr.ok},
                                          {"max_defect", rr.max_defect},
                                          {"pairs", std::move(pairs)}};
            result["structure_ok"] = structure_check(Ad, f, opt.pair_tol);
            text << "sigma:";
            for (double s : f.sigma) text << " " << s;
            text << "\nreciprocal pairing: " << (rr.ok ? "yes" : "no")
                 << " (max defect " << rr.max_defect << ")\n";
        }
    } else if (cmd == "stab find" || cmd == "stab enumerate" || cmd == "stab monomial") {
        Series<K> h = eval_expr<K>(opt.h_expr, opt, "--h");
        Series<K> g = eval_expr<K>(opt.g_expr, opt, "-g");
        TargetVector<K> t = make_target(h, opt.tol);
        result["k"] = t.k;
        std::vector<StabilizerSolution<K>> sols;
        if (cmd == "stab monomial") {
            sols = monomial_stabilizers(t, g, opt.tol);
        } else if (cmd == "stab enumerate") {
            sols = enumerate_S_g(g, t, opt.tol);
        } else {
            K branch{};
            if (!opt.branch_expr.empty()) {
                Series<K> b = eval_expr<K>(opt.branch_expr, opt, "--branch");
                branch = b[0];
            } else {
                K target = branch_constant(g, t, opt.tol);
                auto roots = field_kth_roots<K>(target, unsigned(t.k));
                if (roots.empty())
                    fail("BadBranch", "no field root for the branch constant");
                branch = roots.front();
            }
            sols.push_back(stabilizer_F(g, t, branch, opt.tol));
        }
        json js = json::array();
        for (const auto& s : sols) {
            js.push_back({{"f1", to_json(s.f1_branch)},
                          {"g", to_json(s.pair.g())},
                          {"f", to_json(s.pair.F())}});
        }
        result["solutions"] = std::move(js);
        result["count"] = sols.size();
        evidence.push_back("stabilizer-equation-verified");
        text << sols.size() << " solution(s)\n";
        for (const auto& s : sols) print_series(text, "f", s.pair.F());
    } else {
        fail("UsageError", "unrecognized command '" + cmd + "'");
    }
    return result;
}

template <class K>
int run_dispatch(const Options& opt) {
    auto started = std::chrono::steady_clock::now();
    json envelope;
    envelope["command"] = opt.command;
    envelope["field"] = opt.field;
    envelope["deg"] = opt.deg;
    json inputs = json::array();
    for (const std::string* s : {&opt.g_expr, &opt.f_expr, &opt.h_expr, &opt.g2_expr,
                                 &opt.f2_expr})
        if (!s->empty()) inputs.push_back(*s);
    envelope["inputs"] = std::move(inputs);

    std::vector<std::string> evidence;
    std::ostringstream text;
    int code = 0;
    try {
        envelope["result"] = run_command<K>(opt, evidence, text);
    } catch (const domain_error& e) {
        envelope["result"] = {{"error", e.code()}, {"message", e.what()}};
        evidence.push_back("error:" + e.code());
        text << "error: " << e.what() << "\n";
        code = 1;
    }
    envelope["evidence"] = evidence;
    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - started)
                       .count();
    // exact-field reports must be byte-stable across runs
    envelope["elapsed_ms"] = field_ops<K>::exact ? 0 : elapsed;

    if (opt.json_out)
        std::cout << envelope.dump(2) << "\n";
    else
        std::cout << text.str();
    return code;
}

} // namespace

int main(int argc, char** argv) {
    Options opt;
    CLI::App app{"exact/numeric Riordan matrix calculator"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* cmd) {
        cmd->set_help_flag("--help", "print help"); // frees -h for --h below
        cmd->add_option("-g", opt.g_expr, "series expression for g");
        cmd->add_option("-f", opt.f_expr, "series expression for F");
        cmd->add_option("--h", opt.h_expr, "series expression for a target vector");
        cmd->add_option("--deg", opt.deg, "truncation degree")->capture_default_str();
        cmd->add_option("--field", opt.field, "coefficient field: rat | c64")
            ->check(CLI::IsMember({"rat", "c64"}))
            ->capture_default_str();
        cmd->add_option("--tol", opt.tol, "tolerance for complex-field equality")
            ->capture_default_str();
        cmd->add_flag("--json", opt.json_out, "emit a JSON report");
    };

    auto leaf = [&](CLI::App* parent, const char* name, const char* desc) {
        CLI::App* sub = parent->add_subcommand(name, desc);
        add_common(sub);
        std::string full = std::string(parent->get_name()) + " " + name;
        sub->callback([&opt, full]() { opt.command = full; });
        return sub;
    };

    CLI::App* riordan = app.add_subcommand("riordan", "group arithmetic and truncations");
    riordan->require_subcommand(1);
    CLI::App* r_mul = leaf(riordan, "mul", "multiply two pairs");
    r_mul->add_option("--g2", opt.g2_expr, "second pair: g");
    r_mul->add_option("--f2", opt.f2_expr, "second pair: F");
    leaf(riordan, "inv", "group inverse");
    CLI::App* r_entry = leaf(riordan, "entry", "single matrix entry");
    r_entry->add_option("-i", opt.row, "row index")->required();
    r_entry->add_option("-j", opt.col, "column index")->required();
    CLI::App* r_matrix = leaf(riordan, "matrix", "n x n truncation");
    r_matrix->add_option("--n", opt.n, "dimension")->capture_default_str();
    CLI::App* r_dec = leaf(riordan, "decompose", "two-factor decomposition");
    r_dec->add_option("--n", opt.n, "dimension for the factor matrices")
        ->capture_default_str();
    r_dec->add_flag("--chain", opt.chain, "also emit the n-factor chain");

    CLI::App* eigen = app.add_subcommand("eigen", "eigenvector analysis");
    eigen->require_subcommand(1);
    leaf(eigen, "classify", "full classification with witnesses");
    CLI::App* e_vec = leaf(eigen, "vector", "eigenvector of a given level");
    e_vec->add_option("--level", opt.level, "eigenvector level")->required();
    leaf(eigen, "diagonalize", "conjugator to the diagonal pair");
    leaf(eigen, "linearize", "conjugate F to f1*x");

    CLI::App* pseudo = app.add_subcommand("pseudo", "pseudo-involution analysis");
    pseudo->require_subcommand(1);
    CLI::App* p_check = leaf(pseudo, "check", "(A M)^2 = I test");
    p_check->add_option("--n", opt.n, "dimension")->capture_default_str();
    CLI::App* p_svd = leaf(pseudo, "svd", "singular values and pairing");
    p_svd->add_option("--n", opt.n, "dimension")->capture_default_str();
    p_svd->add_option("--pair-tol", opt.pair_tol, "reciprocal pairing tolerance")
        ->capture_default_str();
    CLI::App* p_bench = leaf(pseudo, "bench", "pairing defect by dimension");
    p_bench->add_option("--n", opt.n, "largest dimension")->capture_default_str();
    p_bench->add_option("--pair-tol", opt.pair_tol, "reciprocal pairing tolerance")
        ->capture_default_str();

    CLI::App* stab = app.add_subcommand("stab", "stabilizer subgroup of a vector");
    stab->require_subcommand(1);
    CLI::App* s_find = leaf(stab, "find", "one stabilizing pair for g");
    s_find->add_option("--branch", opt.branch_expr, "root branch for f1");
    leaf(stab, "enumerate", "every stabilizing pair for g");
    leaf(stab, "monomial", "closed family for a monomial target");

    CLI::App* series = app.add_subcommand("series", "raw series computations");
    series->require_subcommand(1);
    leaf(series, "eval", "evaluate an expression");
    leaf(series, "compose", "compose -g with -f");
    leaf(series, "invert", "compositional inverse of -f");
    CLI::App* s_root = leaf(series, "root", "n-th multiplicative root of -g");
    s_root->add_option("--n", opt.root_order, "root order")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    if (opt.deg < 1 || opt.deg > 512) {
        std::cerr << "error: --deg out of range [1, 512]\n";
        return 2;
    }

    // required expressions per leaf command; missing ones are usage errors
    struct Needs {
        const char* cmd;
        bool g, f, h, second;
    };
    static const Needs needs[] = {
        {"series eval", true, false, false, false},
        {"series compose", true, true, false, false},
        {"series invert", false, true, false, false},
        {"series root", true, false, false, false},
        {"riordan mul", true, true, false, true},
        {"riordan inv", true, true, false, false},
        {"riordan entry", true, true, false, false},
        {"riordan matrix", true, true, false, false},
        {"riordan decompose", true, true, false, false},
        {"eigen classify", true, true, false, false},
        {"eigen vector", true, true, false, false},
        {"eigen diagonalize", true, true, false, false},
        {"eigen linearize", false, true, false, false},
        {"pseudo check", true, true, false, false},
        {"pseudo svd", true, true, false, false},
        {"pseudo bench", true, true, false, false},
        {"stab find", true, false, true, false},
        {"stab enumerate", true, false, true, false},
        {"stab monomial", true, false, true, false},
    };
    for (const auto& n : needs) {
        if (opt.command != n.cmd) continue;
        auto missing = [&](bool need, const std::string& value, const char* flag) {
            if (need && value.empty()) {
                std::cerr << "error: " << opt.command << " requires " << flag << "\n";
                return true;
            }
            return false;
        };
        if (missing(n.g, opt.g_expr, "-g") || missing(n.f, opt.f_expr, "-f") ||
            missing(n.h, opt.h_expr, "--h") || missing(n.second, opt.g2_expr, "--g2") ||
            missing(n.second, opt.f2_expr, "--f2"))
            return 2;
    }

    try {
        if (opt.field == "c64") return run_dispatch<Cplx>(opt);
        return run_dispatch<Rat>(opt);
    } catch (const domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
