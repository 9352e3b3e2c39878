#pragma once

#include "dsc/constants.hpp"
#include "dsc/random.hpp"

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dsc {

class UnknownSuite : public std::invalid_argument {
public:
    explicit UnknownSuite(const std::string& what) : std::invalid_argument(what) {}
};

struct Failure {
    std::string id, inputs, expected, got;
};

struct VerifyReport {
    std::string suite, system;
    std::size_t cases_run = 0, cases_failed = 0;
    std::uint64_t seed = 0;
    std::vector<Failure> failures;
    std::map<std::string, std::size_t> case_counts;  // cases run per check id
};

struct VerifyOptions {
    std::vector<std::string> types;     // empty: the suite's default systems
    std::uint64_t seed = 7;
    std::optional<std::size_t> cases;   // overrides the number of random instances per check
    std::string golden_dir;             // directory with d_<type>.json; empty skips golden diffs
    std::size_t threads = 0;            // 0: hardware concurrency
};

// Suite names: cone-valuations, nearest-face, chamber-sums, wall-crossing, stable-constants,
// levi-fans, discrete-series, all.  The aliases appendixA, appendixB, section1, section2, section3,
// section5, section6 are accepted as well.
const std::vector<std::string>& suite_names();
std::string canonical_suite(const std::string& name);
std::vector<std::string> default_types(const std::string& suite);

// One report per (suite, system), in a fixed order independent of scheduling.
std::vector<VerifyReport> run_suite(const std::string& name, const VerifyOptions& opts);

nlohmann::ordered_json to_json(const VerifyReport& r);
nlohmann::ordered_json to_json(const std::vector<VerifyReport>& reports, const std::string& suite,
                               std::uint64_t seed);

// Golden d table: {system, base_chamber, q, table: {word: value}}.
nlohmann::ordered_json golden_json(const RootSystem& r, const DTable& d);
std::string golden_file_name(const std::string& type);

namespace detail {

// Collects results for one report.  Exceptions thrown by a case are recorded as failures.
class Recorder {
public:
    explicit Recorder(VerifyReport& report) : r_(report) {}

    void check(bool ok, const std::string& id, const std::function<std::string()>& inputs,
               const std::string& expected, const std::function<std::string()>& got);
    void equal(long got, long expected, const std::string& id, const std::function<std::string()>& inputs);
    void truth(bool ok, const std::string& id, const std::function<std::string()>& inputs);
    void guard(const std::string& id, const std::function<void()>& body);

private:
    void count(const std::string& id);
    VerifyReport& r_;
};

// Suite bodies: `cases` is the number of random instances for checks that sample.
void cone_valuations(const std::string& system, Recorder& rec, Rng& rng, std::size_t cases, const VerifyOptions&);
void nearest_face_suite(const std::string& system, Recorder& rec, Rng& rng, std::size_t cases, const VerifyOptions&);
void chamber_sums(const std::string& system, Recorder& rec, Rng& rng, std::size_t cases, const VerifyOptions&);
void wall_crossing(const std::string& system, Recorder& rec, Rng& rng, std::size_t cases, const VerifyOptions&);
void stable_constants(const std::string& system, Recorder& rec, Rng& rng, std::size_t cases, const VerifyOptions&);
void levi_fans(const std::string& system, Recorder& rec, Rng& rng, std::size_t cases, const VerifyOptions&);
void discrete_series(const std::string& system, Recorder& rec, Rng& rng, std::size_t cases, const VerifyOptions&);

// Sampling helpers shared by the suites.
RationalVector random_regular(const RootSystem& r, Rng& rng);
RationalVector random_R_regular(const RootSystem& r, Rng& rng);
RationalVector random_Rvee_regular(const RootSystem& r, Rng& rng);
bool closure_contains(const RootSystem& r, std::size_t c, const RationalVector& x);
bool is_wall(const RootSystem& r, std::size_t c, std::size_t root);
std::vector<SignCharacter> all_characters(std::size_t rank);
std::string join(const std::vector<std::string>& parts);

}  // namespace detail

}  // namespace dsc
