#include "toruswell/turing.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "toruswell/adapted.hpp"

namespace toruswell::turing {

Rational::Rational(long long n, long long d) : num(n), den(d) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

Rational Rational::from_decimal(const std::string& text) {
    const auto dot = text.find('.');
    if (dot == std::string::npos) return Rational(std::stoll(text), 1);
    const std::string head = text.substr(0, dot);
    const std::string tail = text.substr(dot + 1);
    // keeps sums of fiber times far from long long overflow
    if (tail.size() > 9) throw std::invalid_argument("Rational: too many decimals");
    long long den = 1;
    for (std::size_t i = 0; i < tail.size(); ++i) den *= 10;
    const bool neg = !head.empty() && head[0] == '-';
    const long long whole = head.empty() || head == "-" ? 0 : std::stoll(head);
    const long long fracpart = tail.empty() ? 0 : std::stoll(tail);
    long long num = whole * den + (neg ? -fracpart : fracpart);
    return Rational(num, den);
}

Rational Rational::operator+(const Rational& rhs) const {
    return Rational(num * rhs.den + rhs.num * den, den * rhs.den);
}

Rational Rational::operator-(const Rational& rhs) const {
    return Rational(num * rhs.den - rhs.num * den, den * rhs.den);
}

long long Rational::floor() const {
    long long q = num / den;
    if (num % den != 0 && num < 0) --q;
    return q;
}

Rational Rational::frac() const { return *this - Rational(floor(), 1); }

int TuringMachine::state_id(const std::string& name) const {
    const auto it = std::find(state_names.begin(), state_names.end(), name);
    return it == state_names.end() ? -1 : static_cast<int>(it - state_names.begin());
}

int TuringMachine::symbol_id(const std::string& name) const {
    const auto it = std::find(symbols.begin(), symbols.end(), name);
    return it == symbols.end() ? -1 : static_cast<int>(it - symbols.begin());
}

void TuringMachine::validate() const {
    if (start_state < 0 || halt_state < 0)
        throw std::invalid_argument("TuringMachine: states must include START and HALT");
    if (symbols.size() < 2)
        throw std::invalid_argument("TuringMachine: alphabet needs at least two symbols");
    if (rules.size() != state_names.size())
        throw std::invalid_argument("TuringMachine: rule table size mismatch");
    for (std::size_t s = 0; s < state_names.size(); ++s) {
        if (static_cast<int>(s) == halt_state) continue;
        if (rules[s].size() != symbols.size())
            throw std::invalid_argument("TuringMachine: transition not total for state " +
                                        state_names[s]);
        for (const auto& r : rules[s]) {
            if (r.next_state < 0 || r.next_state >= static_cast<int>(state_names.size()) ||
                r.write < 0 || r.write >= static_cast<int>(symbols.size()) ||
                r.move < -1 || r.move > 1)
                throw std::invalid_argument("TuringMachine: malformed rule in state " +
                                            state_names[s]);
        }
    }
}

namespace {

int parse_move(const std::string& tok) {
    if (tok == "L" || tok == "-1") return -1;
    if (tok == "N" || tok == "0") return 0;
    if (tok == "R" || tok == "1") return 1;
    throw std::invalid_argument("TuringMachine: bad move token '" + tok + "'");
}

}  // namespace

TuringMachine TuringMachine::parse(std::istream& in) {
    TuringMachine tm;
    struct PendingRule {
        std::string state, read, next, write, move;
    };
    std::vector<PendingRule> pending;

    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;
        if (key == "states:") {
            std::string s;
            while (ls >> s) tm.state_names.push_back(s);
        } else if (key == "alphabet:") {
            std::string s;
            while (ls >> s) tm.symbols.push_back(s);
        } else if (key == "rule:") {
            PendingRule r;
            std::string arrow;
            if (!(ls >> r.state >> r.read >> arrow >> r.next >> r.write >> r.move) ||
                arrow != "->")
                throw std::invalid_argument(
                    "TuringMachine: rule syntax is 'rule: STATE READ -> NEXT WRITE MOVE'");
            pending.push_back(std::move(r));
        } else {
            throw std::invalid_argument("TuringMachine: unknown directive '" + key + "'");
        }
    }

    tm.start_state = tm.state_id("START");
    tm.halt_state = tm.state_id("HALT");
    tm.rules.assign(tm.state_names.size(), {});
    for (std::size_t s = 0; s < tm.state_names.size(); ++s)
        if (static_cast<int>(s) != tm.halt_state)
            tm.rules[s].assign(tm.symbols.size(), Rule{});

    std::vector<std::vector<bool>> seen(tm.state_names.size(),
                                        std::vector<bool>(tm.symbols.size(), false));
    for (const auto& r : pending) {
        const int s = tm.state_id(r.state);
        const int a = tm.symbol_id(r.read);
        const int ns = tm.state_id(r.next);
        const int w = tm.symbol_id(r.write);
        if (s < 0 || a < 0 || ns < 0 || w < 0)
            throw std::invalid_argument("TuringMachine: rule uses undeclared name");
        if (s == tm.halt_state)
            throw std::invalid_argument("TuringMachine: HALT has no outgoing rules");
        tm.rules[static_cast<std::size_t>(s)][static_cast<std::size_t>(a)] =
            Rule{ns, w, parse_move(r.move)};
        seen[static_cast<std::size_t>(s)][static_cast<std::size_t>(a)] = true;
    }
    for (std::size_t s = 0; s < tm.state_names.size(); ++s) {
        if (static_cast<int>(s) == tm.halt_state) continue;
        for (std::size_t a = 0; a < tm.symbols.size(); ++a)
            if (!seen[s][a])
                throw std::invalid_argument("TuringMachine: missing rule for (" +
                                            tm.state_names[s] + ", " + tm.symbols[a] + ")");
    }
    tm.validate();
    return tm;
}

TuringMachine TuringMachine::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("TuringMachine: cannot open " + path);
    return parse(in);
}

TuringMachine TuringMachine::busy_beaver2() {
    // START plays the usual state A, B is the second state:
    //   A0 -> B1R, A1 -> B1L, B0 -> START(A)1L, B1 -> HALT 1 R
    std::istringstream src(R"(states: START B HALT
alphabet: 0 1
rule: START 0 -> B 1 R
rule: START 1 -> B 1 L
rule: B 0 -> START 1 L
rule: B 1 -> HALT 1 R
)");
    return parse(src);
}

int Configuration::at(long long i) const {
    const auto it = cells.find(i + shift);
    return it == cells.end() ? 0 : it->second;
}

void Configuration::set(long long i, int sym, int blank) {
    if (sym == blank)
        cells.erase(i + shift);
    else
        cells[i + shift] = sym;
}

std::vector<std::pair<long long, int>> Configuration::support() const {
    std::vector<std::pair<long long, int>> out;
    out.reserve(cells.size());
    for (const auto& [k, v] : cells) out.emplace_back(k - shift, v);
    return out;
}

bool Configuration::operator==(const Configuration& rhs) const {
    return state == rhs.state && support() == rhs.support();
}

Configuration initial_configuration(const TuringMachine& tm, const std::vector<int>& tape) {
    Configuration c;
    c.state = tm.start_state;
    for (std::size_t i = 0; i < tape.size(); ++i)
        c.set(static_cast<long long>(i), tape[i], 0);
    return c;
}

Configuration tm_step(const TuringMachine& tm, Configuration c) {
    if (c.state == tm.halt_state) return c;
    const int read = c.at(0);
    const TuringMachine::Rule r =
        tm.rules[static_cast<std::size_t>(c.state)][static_cast<std::size_t>(read)];
    c.set(0, r.write, 0);
    c.state = r.next_state;
    // Shift the tape by -move: the cell formerly at `move` is now at 0.
    c.shift += r.move;
    return c;
}

RunResult tm_run(const TuringMachine& tm, Configuration c, long max_steps) {
    RunResult res;
    for (long i = 0; i < max_steps; ++i) {
        if (c.state == tm.halt_state) break;
        c = tm_step(tm, std::move(c));
        ++res.steps;
        if (c.state == tm.halt_state) break;
    }
    res.halted = c.state == tm.halt_state;
    res.final_config = std::move(c);
    return res;
}

FlowPoint suspension_flow_at(const TuringMachine& tm, FlowPoint start, Rational t) {
    if (t.num < 0) throw std::invalid_argument("suspension_flow_at: t must be >= 0");
    if (start.time.num < 0 || start.time.floor() != 0)
        throw std::invalid_argument("suspension_flow_at: start time must lie in [0, 1)");
    const Rational total = start.time + t;
    const long long crossings = total.floor();
    FlowPoint out;
    out.config = std::move(start.config);
    for (long long i = 0; i < crossings; ++i) out.config = tm_step(tm, std::move(out.config));
    out.time = total.frac();
    return out;
}

GeodesibleCertificate geodesible_certificate(const TuringMachine& tm) {
    tm.validate();
    GeodesibleCertificate cert;
    cert.pairing_value = 1.0;       // theta . Y = dt(d/dt) = 1 on every fiber
    cert.lie_derivative_zero = true;  // theta has constant coefficients along the flow

    // Torus analogue of the unit-speed suspension direction: X = d/dx with
    // theta = dx must come back strongly geodesible from the spectral path.
    const auto rep = adapted::check_adapted(spectral::VectorField::d_dx(),
                                            spectral::OneForm::dx());
    cert.torus_cross_check = rep.strongly_geodesible_for_theta;
    return cert;
}

Reachability halting_reachability(const TuringMachine& tm, const Configuration& start,
                                  const std::function<bool(const Configuration&)>& region,
                                  double t_max) {
    if (region(start)) return {true, 0.0};
    const long budget = static_cast<long>(std::floor(t_max));
    Configuration c = start;
    for (long step = 1; step <= budget; ++step) {
        c = tm_step(tm, std::move(c));
        if (region(c)) return {true, static_cast<double>(step)};
        // HALT is a fixed point: once there and outside the region, the
        // orbit never enters it.
        if (c.state == tm.halt_state) return {};
    }
    return {};
}

}  // namespace toruswell::turing
