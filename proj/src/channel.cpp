#include "acrlnc/channel.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

namespace acrlnc {

namespace {

// Uniform double in [0, 1) from the top 53 bits.
double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

BecChannel::BecChannel(double epsilon) : epsilon_(epsilon) {
    if (!(epsilon >= 0.0 && epsilon < 1.0))
        throw std::invalid_argument("BEC erasure probability must lie in [0,1)");
}

bool BecChannel::step(Rng& rng) { return uniform01(rng) < epsilon_; }

GeChannel::GeChannel(double q, double s) : q_(q), s_(s) {
    if (!(q >= 0.0 && q < 1.0)) throw std::invalid_argument("GE q must lie in [0,1)");
    if (!(s > 0.0 && s <= 1.0)) throw std::invalid_argument("GE s must lie in (0,1]");
}

GeChannel GeChannel::from_erasure_rate(double eps, double s) {
    if (!(eps >= 0.0 && eps < 1.0)) throw std::invalid_argument("GE eps must lie in [0,1)");
    return GeChannel(eps * s / (1.0 - eps), s);
}

void GeChannel::reset(Rng& rng) {
    const auto pi = stationary(q_, s_);
    state_ = uniform01(rng) < pi.pi_bad ? State::Bad : State::Good;
    initialised_ = true;
}

bool GeChannel::step(Rng& rng) {
    if (!initialised_) reset(rng);
    const bool erased = state_ == State::Bad;
    const double u = uniform01(rng);
    if (state_ == State::Good)
        state_ = u < q_ ? State::Bad : State::Good;
    else
        state_ = u < s_ ? State::Good : State::Bad;
    return erased;
}

bool TraceChannel::step(Rng&) {
    if (cursor_ >= outcomes_.size()) throw EndOfTrace();
    return outcomes_[cursor_++];
}

bool step(Channel& channel, Rng& rng) {
    return std::visit([&](auto& c) { return c.step(rng); }, channel);
}

Stationary stationary(double q, double s) {
    if (!(q + s > 0.0)) throw std::domain_error("stationary: q + s must be positive");
    const double g = s / (q + s);
    return {g, 1.0 - g};
}

double expected_transmissions_bec(double eps) {
    if (!(eps >= 0.0 && eps < 1.0)) throw std::domain_error("BEC eps must lie in [0,1)");
    return 1.0 / (1.0 - eps);
}

double expected_transmissions_ge(double q, double s) {
    if (!(s > 0.0 && s < 1.0))
        throw std::domain_error("GE expected transmissions requires s in (0,1)");
    const double eps = stationary(q, s).pi_bad;
    return 1.0 + eps * ((1.0 / (1.0 - s)) * (1.0 / s - s) - 1.0);
}

double expected_transmissions(const Channel& channel) {
    if (const auto* bec = std::get_if<BecChannel>(&channel))
        return expected_transmissions_bec(bec->epsilon());
    if (const auto* ge = std::get_if<GeChannel>(&channel))
        return expected_transmissions_ge(ge->q(), ge->s());
    const auto& trace = std::get<TraceChannel>(channel).outcomes();
    std::size_t erased = 0;
    for (bool b : trace) erased += b;
    if (trace.empty()) return 1.0;
    return expected_transmissions_bec(static_cast<double>(erased) / static_cast<double>(trace.size()));
}

std::vector<bool> parse_trace(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) throw TraceParseError(1, "missing header");
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kTraceHeader) throw TraceParseError(1, "bad header, expected '" + std::string(kTraceHeader) + "'");

    std::vector<bool> out;
    while (std::getline(in, line)) {
        ++line_no;
        for (char c : line) {
            switch (c) {
                case '0': out.push_back(false); break;
                case '1': out.push_back(true); break;
                case ' ': case '\t': case '\r': case '\v': case '\f': break;
                default:
                    throw TraceParseError(line_no, std::string("unexpected character '") + c + "'");
            }
        }
    }
    return out;
}

std::vector<bool> load_trace(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open trace file " + path.string());
    return parse_trace(in);
}

void write_trace(std::ostream& out, const std::vector<bool>& outcomes) {
    out << kTraceHeader << '\n';
    std::size_t col = 0;
    for (bool b : outcomes) {
        out << (b ? '1' : '0');
        if (++col == 64) {
            out << '\n';
            col = 0;
        }
    }
    if (col != 0) out << '\n';
}

void save_trace(const std::filesystem::path& path, const std::vector<bool>& outcomes) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write trace file " + path.string());
    write_trace(out, outcomes);
}

}  // namespace acrlnc
