#include "treo/simulator.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace treo {

Configuration initial_configuration(const ConstraintAutomaton& ca)
{
    Configuration c;
    c.state = ca.initial;
    for (const auto& cell : ca.memory)
        c.memory.emplace(cell.name, cell.init);
    return c;
}

namespace {

// Union-find over the terms of one transition's guard. Each class carries at
// most one concrete value; merging classes with different values is the
// conflict that disables the transition.
class GuardSolver {
public:
    size_t port(const Name& n) { return lookup(ports_, n); }
    size_t pre(const std::string& cell) { return lookup(pres_, cell); }
    size_t post(const std::string& cell) { return lookup(posts_, cell); }

    size_t constant(const Value& v)
    {
        size_t id = fresh();
        val_[id] = v;
        return id;
    }

    bool pin(size_t node, const Value& v)
    {
        size_t r = find(node);
        if (val_[r])
            return *val_[r] == v;
        val_[r] = v;
        return true;
    }

    bool unite(size_t a, size_t b)
    {
        a = find(a);
        b = find(b);
        if (a == b)
            return true;
        if (val_[a] && val_[b] && !(*val_[a] == *val_[b]))
            return false;
        parent_[b] = a;
        if (!val_[a])
            val_[a] = std::move(val_[b]);
        return true;
    }

    std::optional<Value> value_at(size_t node) { return val_[find(node)]; }

    const std::map<std::string, size_t>& pres() const { return pres_; }
    const std::map<std::string, size_t>& posts() const { return posts_; }

private:
    template <class M, class K>
    size_t lookup(M& m, const K& key)
    {
        auto it = m.find(key);
        if (it != m.end())
            return it->second;
        size_t id = fresh();
        m.emplace(key, id);
        return id;
    }

    size_t fresh()
    {
        parent_.push_back(parent_.size());
        val_.emplace_back();
        return parent_.size() - 1;
    }

    size_t find(size_t x)
    {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    std::map<Name, size_t> ports_;
    std::map<std::string, size_t> pres_;
    std::map<std::string, size_t> posts_;
    std::vector<size_t> parent_;
    std::vector<std::optional<Value>> val_;
};

struct Solved {
    std::vector<std::pair<Name, Value>> data;
    std::vector<std::pair<std::string, Value>> writes;
};

// Satisfiability of one guard under the offered data and the current memory.
// Ports outside the synchronisation set may still occur in guards (value
// instantiation leaves them there as plain variables); they take part in the
// unification but are never pinned by offers and never reported as data.
std::optional<Solved> solve_guard(const CaTransition& t, const Configuration& config,
                                  const std::map<Name, std::optional<Value>>& offers)
{
    GuardSolver s;

    for (const auto& eq : t.guard) {
        auto node_of = [&](const CaTerm& term) -> size_t {
            if (const auto* p = std::get_if<CaPort>(&term))
                return s.port(p->name);
            if (const auto* pre = std::get_if<CaMemPre>(&term))
                return s.pre(pre->cell);
            if (const auto* post = std::get_if<CaMemPost>(&term))
                return s.post(post->cell);
            return s.constant(std::get<Value>(term));
        };
        if (!s.unite(node_of(eq.lhs), node_of(eq.rhs)))
            return std::nullopt;
    }

    for (const auto& p : t.sync) {
        auto it = offers.find(p);
        if (it != offers.end() && it->second && !s.pin(s.port(p), *it->second))
            return std::nullopt;
    }

    for (const auto& [cell, node] : s.pres()) {
        auto it = config.memory.find(cell);
        if (it == config.memory.end() || !s.pin(node, it->second))
            return std::nullopt;
    }

    Solved out;
    for (const auto& p : t.sync)
        if (auto v = s.value_at(s.port(p)))
            out.data.emplace_back(p, std::move(*v));
    for (const auto& [cell, node] : s.posts())
        if (auto v = s.value_at(node))
            out.writes.emplace_back(cell, std::move(*v));
    return out;
}

} // namespace

Result<std::optional<Firing>> simulate_step(Configuration& config,
                                            const ConstraintAutomaton& ca,
                                            const std::map<Name, std::optional<Value>>& offers,
                                            const NameSet& ready, SimRng& rng)
{
    NameSet bin = ca.boundary_inputs();
    NameSet bout = ca.boundary_outputs();
    for (const auto& [p, v] : offers)
        if (!bin.count(p))
            return make_error(ErrorKind::Script,
                              "'" + to_string(p) + "' is offered but is not a boundary input");
    for (const auto& p : ready)
        if (!bout.count(p))
            return make_error(ErrorKind::Script,
                              "'" + to_string(p) + "' is marked ready but is not a boundary output");

    struct Enabled {
        const CaTransition* t;
        Solved solved;
    };
    std::vector<Enabled> enabled;
    for (const auto& t : ca.transitions) {
        if (t.from != config.state)
            continue;
        bool covered = true;
        for (const auto& p : t.sync) {
            if ((bin.count(p) && !offers.count(p)) || (bout.count(p) && !ready.count(p))) {
                covered = false;
                break;
            }
        }
        if (!covered)
            continue;
        auto solved = solve_guard(t, config, offers);
        if (!solved)
            continue;
        enabled.push_back(Enabled{&t, std::move(*solved)});
    }

    if (enabled.empty())
        return std::optional<Firing>{};

    size_t pick = enabled.size() > 1 ? static_cast<size_t>(rng() % enabled.size()) : 0;
    Enabled& e = enabled[pick];
    config.state = e.t->to;
    for (auto& [cell, v] : e.solved.writes)
        config.memory.insert_or_assign(cell, std::move(v));
    return std::optional<Firing>{Firing{e.t->sync, std::move(e.solved.data), config.state}};
}

namespace {

EvalError script_error(size_t line, const std::string& msg)
{
    return make_error(ErrorKind::Script, "script line " + std::to_string(line) + ": " + msg);
}

struct LineLexer {
    const std::string& s;
    size_t pos = 0;

    void skip_ws()
    {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t' || s[pos] == '\r'))
            ++pos;
    }
    bool at_end()
    {
        skip_ws();
        return pos >= s.size();
    }
    char peek()
    {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool eat(char c)
    {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    std::optional<std::string> ident()
    {
        skip_ws();
        size_t begin = pos;
        if (pos >= s.size() || (!std::isalpha(static_cast<unsigned char>(s[pos])) && s[pos] != '_'))
            return std::nullopt;
        while (pos < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
            ++pos;
        return s.substr(begin, pos - begin);
    }
    std::optional<std::string> digits()
    {
        skip_ws();
        size_t begin = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
            ++pos;
        if (pos == begin)
            return std::nullopt;
        return s.substr(begin, pos - begin);
    }
};

Result<Name> parse_port_name(LineLexer& lx, size_t line)
{
    std::string base;
    std::vector<uint64_t> subs;
    auto first = lx.ident();
    if (!first)
        return script_error(line, "expected a port name");
    base = *first;
    while (lx.eat('.')) {
        if (auto digits = lx.digits()) {
            try {
                subs.push_back(std::stoull(*digits));
            } catch (const std::out_of_range&) {
                return script_error(line, "subscript is out of range in a port name");
            }
            continue;
        }
        auto seg = lx.ident();
        if (!seg)
            return script_error(line, "expected a name segment after '.'");
        if (!subs.empty())
            return script_error(line, "malformed port name: identifier after a subscript");
        base += "." + *seg;
    }
    return Name(std::move(base), std::move(subs));
}

Result<Value> parse_datum(LineLexer& lx, size_t line)
{
    lx.skip_ws();
    if (lx.pos < lx.s.size() && lx.s[lx.pos] == '"') {
        size_t begin = ++lx.pos;
        size_t close = lx.s.find('"', begin);
        if (close == std::string::npos)
            return script_error(line, "unterminated text literal");
        std::string text = lx.s.substr(begin, close - begin);
        lx.pos = close + 1;
        return Value(std::move(text));
    }
    size_t begin = lx.pos;
    if (lx.pos < lx.s.size() && lx.s[lx.pos] == '-')
        ++lx.pos;
    size_t firstDigit = lx.pos;
    while (lx.pos < lx.s.size() && std::isdigit(static_cast<unsigned char>(lx.s[lx.pos])))
        ++lx.pos;
    if (lx.pos > firstDigit) {
        try {
            return Value(static_cast<int64_t>(std::stoll(lx.s.substr(begin, lx.pos - begin))));
        } catch (const std::out_of_range&) {
            return script_error(line, "integer literal is out of range");
        }
    }
    lx.pos = begin;
    return script_error(line, "expected an integer or quoted text datum");
}

} // namespace

Result<std::vector<ScriptStep>> parse_script(const std::string& text)
{
    std::vector<ScriptStep> steps;
    std::istringstream in(text);
    std::string raw;
    size_t lineNo = 0;
    while (std::getline(in, raw)) {
        ++lineNo;
        if (auto hash = raw.find('#'); hash != std::string::npos)
            raw.erase(hash);
        LineLexer lx{raw};
        if (lx.at_end())
            continue;

        ScriptStep step;
        bool sawOffers = false;
        bool sawReady = false;
        while (true) {
            auto keyword = lx.ident();
            if (!keyword)
                return script_error(lineNo, "expected 'offers' or 'ready'");
            if (!lx.eat(':'))
                return script_error(lineNo, "expected ':' after '" + *keyword + "'");
            if (*keyword == "offers") {
                if (sawOffers)
                    return script_error(lineNo, "duplicate offers section");
                sawOffers = true;
                while (!lx.at_end() && lx.peek() != ';') {
                    TREO_TRY(Name port, parse_port_name(lx, lineNo));
                    std::optional<Value> datum;
                    if (lx.eat('=')) {
                        TREO_TRY(Value v, parse_datum(lx, lineNo));
                        datum = std::move(v);
                    }
                    if (!step.offers.emplace(port, std::move(datum)).second)
                        return script_error(lineNo,
                                            "'" + to_string(port) + "' is offered twice");
                    if (!lx.eat(','))
                        break;
                }
            } else if (*keyword == "ready") {
                if (sawReady)
                    return script_error(lineNo, "duplicate ready section");
                sawReady = true;
                while (!lx.at_end() && lx.peek() != ';') {
                    TREO_TRY(Name port, parse_port_name(lx, lineNo));
                    step.ready.insert(std::move(port));
                    if (!lx.eat(','))
                        break;
                }
            } else {
                return script_error(lineNo, "unknown section '" + *keyword + "'");
            }
            if (lx.at_end())
                break;
            if (!lx.eat(';'))
                return script_error(lineNo, "expected ';' between sections");
            if (lx.at_end())
                break;
        }
        steps.push_back(std::move(step));
    }
    return steps;
}

Result<ConstraintAutomaton> product_of(const Component& flattened, const CaComposeOptions& opts)
{
    const auto& elements = composite_of(flattened).elements();
    ConstraintAutomaton acc;
    acc.states = {"q0"};
    acc.initial = "q0";
    bool first = true;
    for (const auto& e : elements) {
        const ConstraintAutomaton& next = automaton_of(e.inner);
        if (first) {
            acc = next;
            first = false;
            continue;
        }
        TREO_TRY(acc, ca_compose(acc, next, opts));
    }
    return acc;
}

Result<Trace> run_automaton(const ConstraintAutomaton& ca, const std::vector<ScriptStep>& script,
                            size_t steps, uint64_t seed)
{
    Trace trace;
    trace.seed = seed;
    SimRng rng(seed);
    Configuration config = initial_configuration(ca);
    NameSet bin = ca.boundary_inputs();
    NameSet bout = ca.boundary_outputs();
    static const ScriptStep quiet{};
    for (size_t i = 1; i <= steps; ++i) {
        const ScriptStep& s = i <= script.size() ? script[i - 1] : quiet;
        auto fired = simulate_step(config, ca, s.offers, s.ready, rng);
        if (!fired.ok()) {
            EvalError err = fired.error();
            err.trace.push_back("running script step " + std::to_string(i));
            return err;
        }
        TraceStep rec;
        rec.step = i;
        rec.state = config.state;
        if (fired.value()) {
            Firing& f = *fired.value();
            rec.fired = true;
            rec.sync = std::move(f.sync);
            rec.data = std::move(f.data);
            std::map<Name, Value> solved(rec.data.begin(), rec.data.end());
            for (const auto& p : rec.sync) {
                if (!bin.count(p) && !bout.count(p))
                    continue;
                auto it = solved.find(p);
                rec.boundary.emplace_back(p, it == solved.end()
                                                 ? std::optional<Value>{}
                                                 : std::optional<Value>{it->second});
            }
        }
        trace.steps.push_back(std::move(rec));
    }
    return trace;
}

Result<Trace> run_simulation(const Component& flattened, const std::vector<ScriptStep>& script,
                             size_t steps, uint64_t seed, const CaComposeOptions& opts)
{
    TREO_TRY(auto ca, product_of(flattened, opts));
    return run_automaton(ca, script, steps, seed);
}

std::string render_trace(const Trace& trace)
{
    std::string out = "# seed " + std::to_string(trace.seed) + "\n";
    for (const auto& s : trace.steps) {
        out += std::to_string(s.step);
        out += s.fired ? " fired" : " idle";
        out += " state=" + s.state;
        if (s.fired) {
            out += " sync={";
            bool sep = false;
            for (const auto& p : s.sync) {
                if (sep)
                    out += ", ";
                out += to_string(p);
                sep = true;
            }
            out += "} data={";
            sep = false;
            for (const auto& [n, v] : s.data) {
                if (sep)
                    out += ", ";
                out += to_string(n) + "=" + to_string(v);
                sep = true;
            }
            out += "} boundary={";
            sep = false;
            for (const auto& [n, v] : s.boundary) {
                if (sep)
                    out += ", ";
                out += to_string(n);
                if (v)
                    out += "=" + to_string(*v);
                sep = true;
            }
            out += "}";
        }
        out += "\n";
    }
    return out;
}

} // namespace treo
