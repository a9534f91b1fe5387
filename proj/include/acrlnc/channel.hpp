#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "acrlnc/coding.hpp"

namespace acrlnc {

// Thrown when a trace channel has no outcomes left.
struct EndOfTrace : std::runtime_error {
    EndOfTrace() : std::runtime_error("trace exhausted") {}
};

// Malformed trace input; `line` is 1-based.
struct TraceParseError : std::runtime_error {
    TraceParseError(std::size_t line, const std::string& what)
        : std::runtime_error("trace line " + std::to_string(line) + ": " + what), line(line) {}
    std::size_t line;
};

class BecChannel {
public:
    explicit BecChannel(double epsilon);
    bool step(Rng& rng);
    double epsilon() const { return epsilon_; }

private:
    double epsilon_;
};

// Two-state Gilbert-Elliott channel, erasure-free in G and always erasing in B.
// q = P(G -> B), s = P(B -> G).
class GeChannel {
public:
    enum class State { Good, Bad };

    GeChannel(double q, double s);
    // q solved from eps = q / (q + s).
    static GeChannel from_erasure_rate(double eps, double s);

    // Initial state is drawn from the stationary distribution.
    void reset(Rng& rng);
    bool step(Rng& rng);

    double q() const { return q_; }
    double s() const { return s_; }
    State state() const { return state_; }

private:
    double q_;
    double s_;
    State state_ = State::Good;
    bool initialised_ = false;
};

class TraceChannel {
public:
    explicit TraceChannel(std::vector<bool> outcomes) : outcomes_(std::move(outcomes)) {}
    bool step(Rng&);
    std::size_t size() const { return outcomes_.size(); }
    std::size_t cursor() const { return cursor_; }
    const std::vector<bool>& outcomes() const { return outcomes_; }

private:
    std::vector<bool> outcomes_;
    std::size_t cursor_ = 0;
};

using Channel = std::variant<BecChannel, GeChannel, TraceChannel>;

// true = erased.
bool step(Channel& channel, Rng& rng);

struct Stationary {
    double pi_good;
    double pi_bad;
};

Stationary stationary(double q, double s);
inline Stationary stationary(const GeChannel& ge) { return stationary(ge.q(), ge.s()); }

// Mean number of forward transmissions until success.
double expected_transmissions_bec(double eps);
// Closed form 1 + eps[(1/(1-s))(1/s - s) - 1] with eps = pi_B; s must lie in (0,1).
double expected_transmissions_ge(double q, double s);
double expected_transmissions(const Channel& channel);

// Trace file: header line "#ac-rlnc-trace v1", then '0'/'1' per slot,
// whitespace ignored.
inline constexpr const char* kTraceHeader = "#ac-rlnc-trace v1";

std::vector<bool> parse_trace(std::istream& in);
std::vector<bool> load_trace(const std::filesystem::path& path);
void write_trace(std::ostream& out, const std::vector<bool>& outcomes);
void save_trace(const std::filesystem::path& path, const std::vector<bool>& outcomes);

}  // namespace acrlnc
