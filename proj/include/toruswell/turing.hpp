#pragma once

// Toy Turing machines and their suspension flows. The tape follows the
// shift convention: the head stays at cell 0 and the tape moves under it.
// HALT configurations are fixed points, so one machine step is a total map
// and the suspension is defined for all time. Fiber time is exact rational
// arithmetic so the flow property composes exactly.

#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace toruswell::turing {

/// Exact fiber time. Normalized, den > 0.
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n, long long d);
    static Rational from_decimal(const std::string& text);  // "1.25" -> 5/4

    Rational operator+(const Rational& rhs) const;
    Rational operator-(const Rational& rhs) const;
    bool operator==(const Rational& rhs) const { return num == rhs.num && den == rhs.den; }

    long long floor() const;
    Rational frac() const;  // this - floor(), in [0, 1)
    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

struct TuringMachine {
    struct Rule {
        int next_state = 0;
        int write = 0;
        int move = 0;  // -1, 0, 1
    };

    std::vector<std::string> state_names;  // must contain START and HALT
    std::vector<std::string> symbols;      // symbols[0] is the blank
    std::vector<std::vector<Rule>> rules;  // [state][symbol], HALT row unused
    int start_state = -1;
    int halt_state = -1;

    int state_id(const std::string& name) const;
    int symbol_id(const std::string& name) const;

    /// Throws std::invalid_argument when START/HALT are missing, the
    /// alphabet has fewer than two symbols, or the transition is not total.
    void validate() const;

    /// Parses the description grammar (states:, alphabet:, rule: lines).
    static TuringMachine parse(std::istream& in);
    static TuringMachine parse_file(const std::string& path);

    /// The standard 2-state champion machine; halts on blank input after
    /// 6 steps with four marked cells.
    static TuringMachine busy_beaver2();
};

struct Configuration {
    int state = 0;
    std::map<long long, int> cells;  // non-blank cells only, keys relative to the head
    long long shift = 0;             // internal running offset; cell i is cells[i + shift]

    int at(long long i) const;
    void set(long long i, int sym, int blank);

    /// Head-relative (position, symbol) pairs of non-blank cells.
    std::vector<std::pair<long long, int>> support() const;
    bool operator==(const Configuration& rhs) const;
};

Configuration initial_configuration(const TuringMachine& tm,
                                    const std::vector<int>& tape_from_zero = {});

/// One machine step; HALT configurations are returned unchanged.
Configuration tm_step(const TuringMachine& tm, Configuration c);

struct RunResult {
    bool halted = false;
    long steps = 0;
    Configuration final_config;
};

RunResult tm_run(const TuringMachine& tm, Configuration c, long max_steps);

struct FlowPoint {
    Configuration config;
    Rational time;  // fiber coordinate in [0, 1)
};

/// Suspension flow of the one-step map: advances the fiber time by t and
/// applies the step map at every integer crossing.
FlowPoint suspension_flow_at(const TuringMachine& tm, FlowPoint start, Rational t);

struct GeodesibleCertificate {
    double pairing_value = 1.0;       // theta . Y with theta = (0, dt)
    bool lie_derivative_zero = true;  // structural: constant fiber component
    /// Spectral cross-check of the torus analogue (unit-speed flow with
    /// theta = dx reported strongly geodesible).
    bool torus_cross_check = false;
};

GeodesibleCertificate geodesible_certificate(const TuringMachine& tm);

struct Reachability {
    bool reached = false;
    std::optional<double> first_time;
};

/// reached iff the machine halts within floor(t_max) steps and the halt
/// configuration lies in the region; first_time is the halting step count.
Reachability halting_reachability(const TuringMachine& tm, const Configuration& start,
                                  const std::function<bool(const Configuration&)>& region,
                                  double t_max);

}  // namespace toruswell::turing
