#include "dsc/parafan.hpp"
#include "dsc/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#ifndef DSC_GOLDEN_DIR
#define DSC_GOLDEN_DIR "data/golden/v1"
#endif

using namespace dsc;
using json = nlohmann::ordered_json;

namespace {

enum Exit { ok = 0, failures = 1, usage = 2, unsupported_math = 3, precondition = 4 };

json vec_json(const RationalVector& v) {
    json a = json::array();
    for (const auto& q : v) a.push_back(to_string(q));
    return a;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    if (s.empty()) return out;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, sep)) out.push_back(part);
    return out;
}

// "1,2" with 1-based simple indices; "none" or empty for the empty set.
std::vector<std::size_t> parse_subset(const std::string& s, const RootSystem& r) {
    std::vector<std::size_t> out;
    if (s == "none") return out;
    for (const auto& p : split(s, ',')) {
        long i = std::stol(p);
        if (i < 1 || static_cast<std::size_t>(i) > r.rank()) throw ParseError("simple index out of range: " + p);
        out.push_back(static_cast<std::size_t>(i - 1));
    }
    return out;
}

std::vector<RationalVector> parse_vectors(const std::string& s) {
    std::vector<RationalVector> out;
    for (const auto& p : split(s, ';')) out.push_back(parse_vector(p));
    return out;
}

void print(const json& j) { std::cout << j.dump() << "\n"; }

struct TableArgs {
    std::string type, base = "e", format = "json";
    std::uint64_t seed = 1;
};

int cmd_table(const TableArgs& a) {
    auto r = RootSystem::from_type(a.type);
    if (!r.minus_one_in_W())
        throw MinusOneNotInWeylGroup("type " + a.type +
                                     " has no -1 in its Weyl group; the signed chamber sums vanish identically "
                                     "and the d table is not defined");
    std::size_t c0 = r.from_word(a.base);
    auto d = d_table(r, c0, a.seed);
    auto dv = d_vee_table(r, c0, a.seed);
    if (a.format == "golden") {
        std::cout << golden_json(r, d).dump(2) << "\n";
        return ok;
    }
    if (a.format == "csv") {
        std::cout << "# system=" << d.system << " base_chamber=" << r.word(c0) << " q=" << r.q()
                  << " seed=" << a.seed << " x0=" << to_string(d.points.x0)
                  << " lambda0=" << to_string(d.points.lambda0) << "\n";
        std::cout << "word,d,d_vee\n";
        for (std::size_t w = 0; w < r.order(); ++w)
            std::cout << r.word(w) << "," << d.values[w] << "," << dv.values[w] << "\n";
        return ok;
    }
    json j;
    j["system"] = d.system;
    j["base_chamber"] = r.word(c0);
    j["q"] = r.q();
    j["seed"] = a.seed;
    j["x0"] = vec_json(d.points.x0);
    j["lambda0"] = vec_json(d.points.lambda0);
    json t = json::object(), tv = json::object();
    for (std::size_t w = 0; w < r.order(); ++w) {
        t[r.word(w)] = d.values[w];
        tv[r.word(w)] = dv.values[w];
    }
    j["d"] = t;
    j["d_vee"] = tv;
    print(j);
    return ok;
}

struct VerifyArgs {
    std::string suite, types, out, golden = DSC_GOLDEN_DIR;
    std::uint64_t seed = 7;
    std::size_t cases = 0, threads = 0;
};

int cmd_verify(const VerifyArgs& a) {
    VerifyOptions o;
    o.types = split(a.types, ',');
    o.seed = a.seed;
    if (a.cases) o.cases = a.cases;
    o.golden_dir = a.golden;
    o.threads = a.threads;
    auto reports = run_suite(a.suite, o);
    auto j = to_json(reports, canonical_suite(a.suite), a.seed);
    std::string text = j.dump(2) + "\n";
    if (a.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(a.out);
        if (!f) throw std::runtime_error("cannot write " + a.out);
        f << text;
    }
    return j["cases_failed"].get<std::size_t>() == 0 ? ok : failures;
}

struct EvalArgs {
    std::string what, type, x, lambda, rays, ineqs, chamber = "e", tau, levi, p, nu = "middle";
};

int cmd_eval(const EvalArgs& a) {
    const auto& w = a.what;
    if (w == "psi" || w == "phi") {
        auto x = parse_vector(a.x), l = parse_vector(a.lambda);
        if (x.size() != l.size()) throw DimensionMismatch("x and lambda have different dimensions");
        Cone c = a.ineqs.empty() ? Cone::from_generators(x.size(), parse_vectors(a.rays))
                                 : Cone::from_inequalities(x.size(), parse_vectors(a.ineqs));
        print(json{{"value", w == "psi" ? psi(c, x, l) : phi(c, x, l)}});
        return ok;
    }
    auto r = RootSystem::from_type(a.type);
    if (w == "psiR") {
        print(json{{"value", psi_R(r, r.from_word(a.chamber), parse_vector(a.x), parse_vector(a.lambda))}});
    } else if (w == "m") {
        print(json{{"value", m_R(r, parse_vector(a.x), parse_vector(a.lambda))}});
    } else if (w == "cbar") {
        print(json{{"value", cbar(r, parse_vector(a.x), parse_vector(a.lambda))}});
    } else if (w == "b") {
        BQuery q{parse_vector(a.tau), r.from_word(a.chamber), parse_vector(a.x), parse_vector(a.lambda)};
        print(json{{"value", b_constant(r, q)}});
    } else if (w == "kostant") {
        json arr = json::array();
        for (auto e : coset_reps(r, parse_subset(a.levi, r)))
            arr.push_back({{"word", r.word(e)}, {"length", r.element(e).length()}});
        print(json{{"value", arr}});
    } else if (w == "e_nu_p") {
        auto fan = levi_fan(r, parse_subset(a.levi, r));
        auto sum = truncated_cohomology(fan, fan.find(a.p), parse_vector(a.lambda), NuSpec::parse(a.nu));
        json arr = json::array();
        for (const auto& t : sum.terms)
            arr.push_back({{"sign", t.sign}, {"weight", vec_json(t.weight)}, {"length", t.length},
                           {"element", r.word(t.element)}});
        print(json{{"value", arr}});
    } else {
        throw CLI::ValidationError("eval", "unknown function '" + w + "'");
    }
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact cone valuations, chamber sums and discrete series constants"};
    app.require_subcommand(1);

    TableArgs ta;
    auto* table = app.add_subcommand("table", "Tables of stable constants");
    auto* table_d = table->add_subcommand("d", "d(w) and its coroot analogue, keyed by reduced words");
    table->require_subcommand(1);
    table_d->add_option("--type", ta.type, "Cartan type, e.g. B2 or A1xA1")->required();
    table_d->add_option("--base-chamber", ta.base, "base chamber as a Weyl word");
    table_d->add_option("--format", ta.format, "json, csv or golden")
        ->check(CLI::IsMember({"json", "csv", "golden"}));
    table_d->add_option("--seed", ta.seed, "seed for the generic points");

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "Run a verification suite and print a JSON report");
    verify->add_option("--suite", va.suite, "suite name")->required();
    verify->add_option("--types", va.types, "comma-separated Cartan types");
    verify->add_option("--seed", va.seed, "random seed");
    verify->add_option("--cases", va.cases, "random instances per sampled check");
    verify->add_option("--out", va.out, "write the report to this file");
    verify->add_option("--golden-dir", va.golden, "directory with golden d tables");
    verify->add_option("--threads", va.threads, "worker threads (0: all cores)");

    EvalArgs ea;
    auto* eval = app.add_subcommand("eval", "Evaluate one function");
    eval->add_option("function", ea.what, "psi, phi, psiR, m, cbar, b, kostant or e_nu_p")->required();
    eval->add_option("--type", ea.type, "Cartan type");
    eval->add_option("--x", ea.x, "point of X, e.g. 1/2,-3");
    eval->add_option("--lambda", ea.lambda, "form on X");
    eval->add_option("--rays", ea.rays, "cone generators separated by ';'");
    eval->add_option("--ineqs", ea.ineqs, "cone inequalities separated by ';'");
    eval->add_option("--chamber", ea.chamber, "chamber as a Weyl word");
    eval->add_option("--tau", ea.tau, "regular parameter in X*");
    eval->add_option("--levi", ea.levi, "1-based simple indices of the Levi, e.g. 1,2 (none: the torus)");
    eval->add_option("--p", ea.p, "fan cone label");
    eval->add_option("--nu", ea.nu, "middle, +inf, -inf or a vector");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? ok : usage;
    }

    bool evaluating = eval->parsed();
    try {
        if (table->parsed()) return cmd_table(ta);
        if (verify->parsed()) return cmd_verify(va);
        return cmd_eval(ea);
    } catch (const MinusOneNotInWeylGroup& e) {
        std::cerr << "error: " << e.what() << "\n";
        return unsupported_math;
    } catch (const UnsupportedType& e) {
        std::cerr << "error: " << e.what() << "\n";
        return usage;
    } catch (const UnknownSuite& e) {
        std::cerr << "error: " << e.what() << "\n";
        return usage;
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return usage;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return usage;
    } catch (const std::logic_error& e) {
        // PreconditionError, DimensionMismatch and out-of-range lookups.
        std::cerr << "error: " << e.what() << "\n";
        return evaluating ? precondition : usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return usage;
    }
}
