#include "dsc/verify.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace dsc {

namespace {

struct SuiteInfo {
    std::string name, alias;
    void (*body)(const std::string&, detail::Recorder&, Rng&, std::size_t, const VerifyOptions&);
    std::vector<std::string> types;
    bool random_cones;  // adds a "random" system that ignores --types
    bool uses_types;
};

const std::vector<SuiteInfo>& suites() {
    static const std::vector<SuiteInfo> s = {
        {"cone-valuations", "appendixA", detail::cone_valuations, {}, true, false},
        {"nearest-face", "appendixB", detail::nearest_face_suite, {"B2", "G2"}, true, true},
        {"chamber-sums", "section1", detail::chamber_sums, {"A2", "A3", "B2", "G2", "B3"}, false, true},
        {"wall-crossing", "section2", detail::wall_crossing, {"B2", "G2"}, false, true},
        {"stable-constants", "section3", detail::stable_constants,
         {"A1", "A1xA1", "A1xA1xA1", "B2", "G2", "B3", "C3"}, false, true},
        {"levi-fans", "section5", detail::levi_fans, {"A1", "A2", "B2", "G2"}, false, true},
        {"discrete-series", "section6", detail::discrete_series, {"A1", "A1xA1", "B2", "G2", "B3"}, false, true},
    };
    return s;
}

const SuiteInfo& info(const std::string& canonical) {
    for (const auto& s : suites())
        if (s.name == canonical) return s;
    throw UnknownSuite("unknown suite '" + canonical + "'");
}

struct Task {
    const SuiteInfo* suite;
    std::string system;
};

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& s : suites()) n.push_back(s.name);
        n.push_back("all");
        return n;
    }();
    return names;
}

std::string canonical_suite(const std::string& name) {
    if (name == "all") return name;
    for (const auto& s : suites())
        if (name == s.name || name == s.alias) return s.name;
    throw UnknownSuite("unknown suite '" + name + "'");
}

std::vector<std::string> default_types(const std::string& suite) { return info(canonical_suite(suite)).types; }

std::vector<VerifyReport> run_suite(const std::string& name, const VerifyOptions& opts) {
    std::string canonical = canonical_suite(name);
    for (const auto& t : opts.types) RootSystem::from_type(t);  // unsupported types fail before any work

    std::vector<Task> tasks;
    for (const auto& s : suites()) {
        if (canonical != "all" && canonical != s.name) continue;
        if (s.random_cones) tasks.push_back({&s, "random"});
        if (!s.uses_types) continue;
        for (const auto& t : opts.types.empty() ? s.types : opts.types) tasks.push_back({&s, t});
    }

    std::vector<VerifyReport> reports(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) {
            const auto& t = tasks[i];
            auto& rep = reports[i];
            rep.suite = t.suite->name;
            rep.system = t.system;
            rep.seed = opts.seed;
            detail::Recorder rec(rep);
            Rng rng = Rng::derived(opts.seed, t.suite->name + "/" + t.system);
            rec.guard("setup", [&] { t.suite->body(t.system, rec, rng, opts.cases.value_or(0), opts); });
            rep.cases_failed = rep.failures.size();
        }
    };
    std::size_t n = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
    n = std::min(n, std::max<std::size_t>(tasks.size(), 1));
    std::vector<std::thread> pool;
    for (std::size_t k = 1; k < n; ++k) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    return reports;
}

nlohmann::ordered_json to_json(const VerifyReport& r) {
    nlohmann::ordered_json j;
    j["suite"] = r.suite;
    j["system"] = r.system;
    j["cases_run"] = r.cases_run;
    j["cases_failed"] = r.cases_failed;
    j["seed"] = r.seed;
    auto fails = nlohmann::ordered_json::array();
    for (const auto& f : r.failures)
        fails.push_back({{"case", f.id}, {"inputs", f.inputs}, {"expected", f.expected}, {"got", f.got}});
    j["failures"] = fails;
    nlohmann::ordered_json counts = nlohmann::ordered_json::object();
    for (const auto& [id, n] : r.case_counts) counts[id] = n;
    j["case_counts"] = counts;
    return j;
}

nlohmann::ordered_json to_json(const std::vector<VerifyReport>& reports, const std::string& suite,
                               std::uint64_t seed) {
    std::size_t run = 0, failed = 0;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : reports) {
        run += r.cases_run;
        failed += r.cases_failed;
        arr.push_back(to_json(r));
    }
    nlohmann::ordered_json j;
    j["suite"] = suite;
    j["seed"] = seed;
    j["cases_run"] = run;
    j["cases_failed"] = failed;
    j["reports"] = arr;
    return j;
}

nlohmann::ordered_json golden_json(const RootSystem& r, const DTable& d) {
    nlohmann::ordered_json j;
    j["system"] = d.system;
    j["base_chamber"] = r.word(d.base_chamber);
    j["q"] = r.q();
    nlohmann::ordered_json table = nlohmann::ordered_json::object();
    for (std::size_t w = 0; w < d.values.size(); ++w) table[r.word(w)] = d.values[w];
    j["table"] = table;
    return j;
}

std::string golden_file_name(const std::string& type) { return "d_" + type + ".json"; }

namespace detail {

void Recorder::count(const std::string& id) {
    ++r_.cases_run;
    // Golden entries are grouped under one id.
    auto slash = id.find('/');
    ++r_.case_counts[id.compare(0, 7, "golden/") == 0 ? id.substr(0, slash) : id];
}

void Recorder::check(bool ok, const std::string& id, const std::function<std::string()>& inputs,
                     const std::string& expected, const std::function<std::string()>& got) {
    count(id);
    if (!ok) r_.failures.push_back({id, inputs(), expected, got()});
}

void Recorder::equal(long got, long expected, const std::string& id, const std::function<std::string()>& inputs) {
    count(id);
    if (got != expected) r_.failures.push_back({id, inputs(), std::to_string(expected), std::to_string(got)});
}

void Recorder::truth(bool ok, const std::string& id, const std::function<std::string()>& inputs) {
    count(id);
    if (!ok) r_.failures.push_back({id, inputs(), "true", "false"});
}

void Recorder::guard(const std::string& id, const std::function<void()>& body) {
    try {
        body();
    } catch (const std::exception& e) {
        count(id);
        r_.failures.push_back({id, "", "no error", std::string("error: ") + e.what()});
    }
}

RationalVector random_regular(const RootSystem& r, Rng& rng) {
    RationalVector x;
    do x = rng.vector(r.dim(), 6, 5);
    while (!r.is_regular(x));
    return x;
}

RationalVector random_R_regular(const RootSystem& r, Rng& rng) {
    RationalVector l;
    do l = rng.vector(r.dim(), 6, 5);
    while (!r.is_R_regular(l));
    return l;
}

RationalVector random_Rvee_regular(const RootSystem& r, Rng& rng) {
    RationalVector x;
    do x = rng.vector(r.dim(), 6, 5);
    while (!r.is_Rvee_regular(x));
    return x;
}

bool closure_contains(const RootSystem& r, std::size_t c, const RationalVector& x) {
    const auto& s = r.chamber_signs(c);
    for (std::size_t j = 0; j < r.root_count(); ++j)
        if (s[j] > 0 && dot(r.roots()[j], x) < 0) return false;
    return true;
}

bool is_wall(const RootSystem& r, std::size_t c, std::size_t root) {
    auto w = r.chamber_simple_roots(c);
    return std::find(w.begin(), w.end(), root) != w.end() ||
           std::find(w.begin(), w.end(), r.negative_of(root)) != w.end();
}

std::vector<SignCharacter> all_characters(std::size_t rank) {
    std::vector<SignCharacter> out;
    for (std::size_t mask = 0; mask < (std::size_t(1) << rank); ++mask) {
        SignCharacter chi;
        for (std::size_t i = 0; i < rank; ++i) chi.values.push_back((mask >> i) & 1 ? -1 : 1);
        out.push_back(chi);
    }
    return out;
}

std::string join(const std::vector<std::string>& parts) {
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? " " : "") + parts[i];
    return s;
}

}  // namespace detail

}  // namespace dsc
