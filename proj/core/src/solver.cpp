#include <algorithm>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "treo/builtins.hpp"
#include "treo/eval.hpp"

namespace treo {

namespace {

// --- boundedness pre-pass ------------------------------------------------
//
// A predicate has a finite solution set only when every variable the solver
// may need to bind occurs in at least one membership atom of positive
// polarity. The check is syntactic and works on base identifiers: an indexed
// occurrence a[i] counts as a use (and a positive bound) of a.

struct VarUse {
    std::set<std::string> used;
    std::set<std::string> bound;
};

void scan_term(const TermAst& t, const std::set<std::string>& local, VarUse& out);

void scan_list(const ListAst& l, const std::set<std::string>& local, VarUse& out)
{
    for (const auto& item : l.items) {
        if (item.a)
            scan_term(*item.a, local, out);
        if (item.b)
            scan_term(*item.b, local, out);
    }
}

void scan_variable(const VariableAst& v, const std::set<std::string>& local, VarUse& out)
{
    if (!local.count(v.base))
        out.used.insert(v.base);
    for (const auto& idx : v.indices)
        scan_list(idx, local, out);
}

void scan_term(const TermAst& t, const std::set<std::string>& local, VarUse& out)
{
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, TermAst::Var>) {
                scan_variable(n.var, local, out);
            } else if constexpr (std::is_same_v<T, TermAst::ListLit>) {
                scan_list(n.list, local, out);
            } else if constexpr (std::is_same_v<T, TermAst::Slice>) {
                scan_term(*n.lo, local, out);
                scan_term(*n.hi, local, out);
            } else if constexpr (std::is_same_v<T, TermAst::Index>) {
                scan_term(*n.base, local, out);
                scan_list(n.index, local, out);
            } else if constexpr (std::is_same_v<T, TermAst::Call>) {
                for (const auto& a : n.args)
                    scan_term(*a, local, out);
            } else if constexpr (std::is_same_v<T, TermAst::Neg>) {
                scan_term(*n.operand, local, out);
            } else if constexpr (std::is_same_v<T, TermAst::Binary>) {
                scan_term(*n.lhs, local, out);
                scan_term(*n.rhs, local, out);
            }
        },
        t.node);
}

void scan_pred(const PredAst& p, bool positive, const std::set<std::string>& local, VarUse& out)
{
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, PredAst::Member>) {
                scan_variable(n.var, local, out);
                scan_term(*n.list, local, out);
                if (positive && !local.count(n.var.base))
                    out.bound.insert(n.var.base);
            } else if constexpr (std::is_same_v<T, PredAst::Compare>) {
                scan_term(*n.lhs, local, out);
                scan_term(*n.rhs, local, out);
            } else if constexpr (std::is_same_v<T, PredAst::Truth>) {
                scan_variable(n.var, local, out);
            } else if constexpr (std::is_same_v<T, PredAst::Not>) {
                scan_pred(*n.p, !positive, local, out);
            } else if constexpr (std::is_same_v<T, PredAst::And>
                                 || std::is_same_v<T, PredAst::Or>) {
                scan_pred(*n.a, positive, local, out);
                scan_pred(*n.b, positive, local, out);
            } else if constexpr (std::is_same_v<T, PredAst::Implies>) {
                scan_pred(*n.a, !positive, local, out);
                scan_pred(*n.b, positive, local, out);
            } else if constexpr (std::is_same_v<T, PredAst::Quant>) {
                scan_term(*n.list, local, out);
                auto inner = local;
                inner.insert(n.var);
                scan_pred(*n.body, positive, inner, out);
            }
        },
        p.node);
}

std::vector<std::string> unbounded_vars(const PredAst& p, const Scope& scope)
{
    VarUse use;
    scan_pred(p, true, {}, use);
    std::set<std::string> known = use.bound;
    for (const auto& [n, _] : scope.entries())
        known.insert(n.base);
    std::vector<std::string> out;
    for (const auto& v : use.used)
        if (!known.count(v))
            out.push_back(v);
    return out;
}

// --- solution sets --------------------------------------------------------

bool scope_extends(const Scope& big, const Scope& small)
{
    for (const auto& [k, v] : small.entries()) {
        const Value* bv = big.lookup(k);
        if (!bv || !value_equal(*bv, v))
            return false;
    }
    return true;
}

// Drops strict extensions of other solutions and duplicate scopes. The drop
// decisions are made before any scope moves out, so every comparison sees
// the original solutions.
void prune_minimal(std::vector<Scope>& sols)
{
    const size_t n = sols.size();
    std::vector<char> drop(n, 0);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n && !drop[i]; ++j) {
            if (i == j || !scope_extends(sols[i], sols[j]))
                continue;
            if (sols[i].size() > sols[j].size())
                drop[i] = 1; // strict extension of a smaller solution
            else if (scope_extends(sols[j], sols[i]) && j < i)
                drop[i] = 1; // duplicate; the first occurrence wins
        }
    }
    std::vector<Scope> keep;
    for (size_t i = 0; i < n; ++i)
        if (!drop[i])
            keep.push_back(std::move(sols[i]));
    sols = std::move(keep);
}

using Delta = std::vector<std::pair<Name, Value>>;

Delta scope_delta(const Scope& ext, const Scope& base)
{
    Delta out;
    for (const auto& [k, v] : ext.entries()) {
        const Value* bv = base.lookup(k);
        if (!bv || !value_equal(*bv, v))
            out.push_back({k, v});
    }
    return out;
}

int delta_compare(const Delta& a, const Delta& b)
{
    size_t n = std::min(a.size(), b.size());
    for (size_t i = 0; i < n; ++i) {
        if (a[i].first != b[i].first)
            return a[i].first < b[i].first ? -1 : 1;
        if (int c = value_compare(a[i].second, b[i].second))
            return c;
    }
    if (a.size() != b.size())
        return a.size() < b.size() ? -1 : 1;
    return 0;
}

void order_solutions(std::vector<Scope>& sols, const Scope& base)
{
    std::vector<std::pair<Delta, Scope>> keyed;
    keyed.reserve(sols.size());
    for (auto& s : sols)
        keyed.push_back({scope_delta(s, base), std::move(s)});
    std::sort(keyed.begin(), keyed.end(),
              [](const auto& x, const auto& y) { return delta_compare(x.first, y.first) < 0; });
    sols.clear();
    for (auto& [_, s] : keyed)
        sols.push_back(std::move(s));
}

// --- the solver ------------------------------------------------------------

class Solver {
public:
    explicit Solver(EvalContext& ctx) : ctx_(ctx) {}

    Result<std::vector<Scope>> solve(const PredAst& p, const Scope& s)
    {
        const Span span = p.span;
        return std::visit(
            [&](const auto& n) -> Result<std::vector<Scope>> {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, PredAst::BoolConst>)
                    return n.value ? some(s) : none();
                else if constexpr (std::is_same_v<T, PredAst::Member>)
                    return member(n, span, s);
                else if constexpr (std::is_same_v<T, PredAst::Compare>)
                    return compare(n, span, s);
                else if constexpr (std::is_same_v<T, PredAst::Truth>)
                    return truth(n, span, s);
                else if constexpr (std::is_same_v<T, PredAst::Not>) {
                    TREO_TRY(bool h, holds(*n.p, s));
                    return h ? none() : some(s);
                } else if constexpr (std::is_same_v<T, PredAst::And>)
                    return conj(*n.a, *n.b, s);
                else if constexpr (std::is_same_v<T, PredAst::Or>)
                    return disj(*n.a, *n.b, s);
                else if constexpr (std::is_same_v<T, PredAst::Implies>) {
                    PredAst negated{PredAst::Not{n.a}, span};
                    return disj(negated, *n.b, s);
                } else
                    return quant(n, span, s);
            },
            p.node);
    }

    // Whether the scope itself, with no extension, satisfies p.
    Result<bool> holds(const PredAst& p, const Scope& s)
    {
        TREO_TRY(auto sols, solve(p, s));
        for (const auto& sol : sols)
            if (sol.entries() == s.entries())
                return true;
        return false;
    }

private:
    static std::vector<Scope> none() { return {}; }
    static std::vector<Scope> some(const Scope& s) { return {s}; }

    Result<std::vector<Scope>> member(const PredAst::Member& m, Span span, const Scope& s)
    {
        TREO_TRY(NameArray v, eval_variable(m.var, s, ctx_));
        if (!v.is_atom()) {
            ctx_.warn("membership of a name array never holds", span);
            return none();
        }
        TREO_TRY(Value list, eval_term(*m.list, s, ctx_));
        if (!list.is_array()) {
            ctx_.warn(std::string("membership in a ") + type_name(list) + " never holds", span);
            return none();
        }
        const Name& x = v.atom();
        if (const Value* bound = s.lookup(x)) {
            for (const auto& elem : list.as_array())
                if (value_equal(*bound, elem))
                    return some(s);
            return none();
        }
        std::vector<Scope> out;
        for (const auto& elem : list.as_array())
            out.push_back(s.bind(x, elem));
        prune_minimal(out);
        return out;
    }

    Result<std::vector<Scope>> compare(const PredAst::Compare& c, Span span, const Scope& s)
    {
        TREO_TRY(Value lhs, eval_term(*c.lhs, s, ctx_));
        TREO_TRY(Value rhs, eval_term(*c.rhs, s, ctx_));
        TREO_TRY(bool res, apply_compare(c.op, lhs, rhs, span));
        return res ? some(s) : none();
    }

    Result<std::vector<Scope>> truth(const PredAst::Truth& t, Span span, const Scope& s)
    {
        TREO_TRY(NameArray v, eval_variable(t.var, s, ctx_));
        if (!v.is_atom())
            return make_error(ErrorKind::TypeMismatch, "a name array is not a truth value", span);
        const Value* bound = s.lookup(v.atom());
        if (!bound)
            return make_error(ErrorKind::UnboundName,
                              "'" + to_string(v.atom()) + "' is not bound", span);
        if (!bound->is_bool())
            return make_error(ErrorKind::TypeMismatch,
                              "'" + to_string(v.atom()) + "' is " + type_name(*bound)
                                  + ", not a boolean",
                              span);
        return bound->as_bool() ? some(s) : none();
    }

    // Conjunction narrows left to right; when the left conjunct cannot be
    // evaluated yet (unbound names), the right one goes first. Since the
    // second conjunct can bind names a negation in the first one looked at,
    // every joined scope is re-checked against both conjuncts.
    Result<std::vector<Scope>> conj(const PredAst& a, const PredAst& b, const Scope& s)
    {
        std::vector<Scope> joined;
        auto left = solve(a, s);
        if (left.ok()) {
            for (const auto& sa : left.value()) {
                TREO_TRY(auto rights, solve(b, sa));
                joined.insert(joined.end(), rights.begin(), rights.end());
            }
        } else {
            auto right = solve(b, s);
            if (!right.ok())
                return std::move(left).error();
            for (const auto& sb : right.value()) {
                TREO_TRY(auto lefts, solve(a, sb));
                joined.insert(joined.end(), lefts.begin(), lefts.end());
            }
        }
        std::vector<Scope> out;
        for (auto& sol : joined) {
            TREO_TRY(bool ha, holds(a, sol));
            if (!ha)
                continue;
            TREO_TRY(bool hb, holds(b, sol));
            if (hb)
                out.push_back(std::move(sol));
        }
        prune_minimal(out);
        return out;
    }

    // A branch that fails to evaluate is dropped as long as the other one
    // succeeds; the disjunction errs only when both branches do.
    Result<std::vector<Scope>> disj(const PredAst& a, const PredAst& b, const Scope& s)
    {
        auto left = solve(a, s);
        auto right = solve(b, s);
        if (!left.ok() && !right.ok())
            return std::move(left).error();
        std::vector<Scope> out;
        if (left.ok())
            out = std::move(left).value();
        if (right.ok()) {
            auto& more = right.value();
            out.insert(out.end(), std::make_move_iterator(more.begin()),
                       std::make_move_iterator(more.end()));
        }
        prune_minimal(out);
        return out;
    }

    Result<std::vector<Scope>> quant(const PredAst::Quant& q, Span span, const Scope& s)
    {
        TREO_TRY(Value list, eval_term(*q.list, s, ctx_));
        if (!list.is_array())
            return make_error(ErrorKind::TypeMismatch,
                              std::string("a quantifier needs a list, got ") + type_name(list),
                              span);
        const Name x{q.var};
        if (!q.universal) {
            std::vector<Scope> out;
            for (const auto& elem : list.as_array()) {
                TREO_TRY(auto body, solve(*q.body, s.bind(x, elem)));
                for (const auto& ext : body)
                    out.push_back(rebase(s, ext, x));
            }
            prune_minimal(out);
            return out;
        }
        std::vector<Scope> sols{s};
        for (const auto& elem : list.as_array()) {
            std::vector<Scope> next;
            for (const auto& cur : sols) {
                TREO_TRY(auto body, solve(*q.body, cur.bind(x, elem)));
                for (const auto& ext : body)
                    next.push_back(rebase(cur, ext, x));
            }
            prune_minimal(next);
            sols = std::move(next);
            if (sols.empty())
                break;
        }
        // A later element can introduce bindings an earlier check relied on
        // being absent, so confirm each survivor over the whole list.
        std::vector<Scope> out;
        for (auto& sol : sols) {
            bool good = true;
            for (const auto& elem : list.as_array()) {
                TREO_TRY(bool h, holds(*q.body, sol.bind(x, elem)));
                if (!h) {
                    good = false;
                    break;
                }
            }
            if (good)
                out.push_back(std::move(sol));
        }
        return out;
    }

    // Carries the extension's new bindings over to the base scope, leaving
    // out the quantified name (its binding is local to the body).
    static Scope rebase(const Scope& base, const Scope& ext, const Name& x)
    {
        Scope out = base;
        for (const auto& [n, v] : ext.entries()) {
            if (n == x)
                continue;
            if (const Value* have = out.lookup(n); have && value_equal(*have, v))
                continue;
            out.bind_in_place(n, v);
        }
        return out;
    }

    EvalContext& ctx_;
};

} // namespace

Result<Solutions> solve_predicate(const PredAst& p, const Scope& scope, EvalContext& ctx)
{
    auto free = unbounded_vars(p, scope);
    if (!free.empty())
        return Solutions{true, std::move(free), {}};
    Solver solver(ctx);
    TREO_TRY(auto sols, solver.solve(p, scope));
    prune_minimal(sols);
    order_solutions(sols, scope);
    return Solutions{false, {}, std::move(sols)};
}

} // namespace treo
