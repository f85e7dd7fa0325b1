#include <algorithm>
#include <functional>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "treo/builtins.hpp"
#include "treo/eval.hpp"
#include "treo/printer.hpp"

namespace treo {

namespace {

// Pointwise lookup of a name array; the whole array must be bound.
Result<Value> lookup_names(const NameArray& a, const Scope& s, Span span)
{
    if (a.is_atom()) {
        const Value* v = s.lookup(a.atom());
        if (!v)
            return make_error(ErrorKind::UnboundName, "'" + to_string(a.atom()) + "' is not bound",
                              span);
        return *v;
    }
    Value::Array out;
    for (const auto& child : a.list()) {
        TREO_TRY(Value v, lookup_names(child, s, span));
        out.push_back(std::move(v));
    }
    return Value(std::move(out));
}

Result<int64_t> int_endpoint(const TermAst& t, const Scope& s, EvalContext& ctx, const char* what)
{
    TREO_TRY(Value v, eval_term(t, s, ctx));
    if (!v.is_int())
        return make_error(ErrorKind::TypeMismatch,
                          std::string(what) + " must be an integer, got " + type_name(v), t.span);
    return v.as_int();
}

} // namespace

Result<NameArray> eval_variable(const VariableAst& v, const Scope& scope, EvalContext& ctx)
{
    NameArray out{Name(v.base)};
    for (const auto& il : v.indices) {
        TREO_TRY(Value idx, eval_list(il, scope, ctx));
        if (!is_natural_array(idx))
            return make_error(ErrorKind::TypeMismatch,
                              "a name index must be made of naturals", il.span);
        TREO_TRY(out, access_names(out, idx, il.span));
    }
    return out;
}

Result<NameArray> eval_arguments(const std::vector<VariableAst>& args, const Scope& scope,
                                 EvalContext& ctx)
{
    NameArray::List out;
    for (const auto& a : args) {
        TREO_TRY(NameArray n, eval_variable(a, scope, ctx));
        out.push_back(std::move(n));
    }
    return NameArray(std::move(out));
}

Result<Value> eval_term(const TermAst& t, const Scope& scope, EvalContext& ctx)
{
    const Span span = t.span;
    return std::visit(
        [&](const auto& n) -> Result<Value> {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, TermAst::Nat>) {
                if (n.value > uint64_t{std::numeric_limits<int64_t>::max()})
                    return make_error(ErrorKind::Arithmetic, "integer literal is out of range",
                                      span);
                return Value(int64_t(n.value));
            } else if constexpr (std::is_same_v<T, TermAst::Dec>) {
                return Value(n.value);
            } else if constexpr (std::is_same_v<T, TermAst::BoolLit>) {
                return Value(n.value);
            } else if constexpr (std::is_same_v<T, TermAst::Text>) {
                return Value(n.value);
            } else if constexpr (std::is_same_v<T, TermAst::Var>) {
                TREO_TRY(NameArray a, eval_variable(n.var, scope, ctx));
                return lookup_names(a, scope, span);
            } else if constexpr (std::is_same_v<T, TermAst::Comp>) {
                TREO_TRY(Component c, eval_component(*n.comp, scope, ctx));
                return Value(std::move(c));
            } else if constexpr (std::is_same_v<T, TermAst::Defn>) {
                TREO_TRY(DefinitionPtr d, eval_definition(n.defn, scope, ctx));
                return Value(std::move(d));
            } else if constexpr (std::is_same_v<T, TermAst::ListLit>) {
                return eval_list(n.list, scope, ctx);
            } else if constexpr (std::is_same_v<T, TermAst::Slice>) {
                TREO_TRY(int64_t lo, int_endpoint(*n.lo, scope, ctx, "a range endpoint"));
                TREO_TRY(int64_t hi, int_endpoint(*n.hi, scope, ctx, "a range endpoint"));
                return lst(lo, hi - 1);
            } else if constexpr (std::is_same_v<T, TermAst::Index>) {
                TREO_TRY(Value base, eval_term(*n.base, scope, ctx));
                TREO_TRY(Value idx, eval_list(n.index, scope, ctx));
                if (!is_natural_array(idx))
                    return make_error(ErrorKind::TypeMismatch,
                                      "an index must be made of naturals", n.index.span);
                return access(base, idx, span);
            } else if constexpr (std::is_same_v<T, TermAst::Call>) {
                if (n.fn != "len")
                    return make_error(ErrorKind::UnboundName, "unknown function '" + n.fn + "'",
                                      span);
                if (n.args.size() != 1)
                    return make_error(ErrorKind::Arity,
                                      "len takes one argument, got "
                                          + std::to_string(n.args.size()),
                                      span);
                TREO_TRY(Value v, eval_term(*n.args[0], scope, ctx));
                return builtin_len(v, span);
            } else if constexpr (std::is_same_v<T, TermAst::Neg>) {
                TREO_TRY(Value v, eval_term(*n.operand, scope, ctx));
                return apply_negate(v, span);
            } else {
                TREO_TRY(Value lhs, eval_term(*n.lhs, scope, ctx));
                TREO_TRY(Value rhs, eval_term(*n.rhs, scope, ctx));
                return apply_binary(n.op, lhs, rhs, span);
            }
        },
        t.node);
}

Result<Value> eval_list(const ListAst& l, const Scope& scope, EvalContext& ctx)
{
    Value::Array out;
    for (const auto& item : l.items) {
        switch (item.kind) {
        case ListItemAst::Kind::Single: {
            TREO_TRY(Value v, eval_term(*item.a, scope, ctx));
            out.push_back(std::move(v));
            break;
        }
        case ListItemAst::Kind::Splice: {
            TREO_TRY(int64_t a, int_endpoint(*item.a, scope, ctx, "a splice endpoint"));
            TREO_TRY(int64_t b, int_endpoint(*item.b, scope, ctx, "a splice endpoint"));
            Value r = lst(a, b);
            for (auto& v : r.as_array())
                out.push_back(std::move(v));
            break;
        }
        case ListItemAst::Kind::Range: {
            TREO_TRY(int64_t a, int_endpoint(*item.a, scope, ctx, "a range endpoint"));
            TREO_TRY(int64_t b, int_endpoint(*item.b, scope, ctx, "a range endpoint"));
            out.push_back(lst(a, b));
            break;
        }
        }
    }
    return Value(std::move(out));
}

Result<DefinitionPtr> eval_definition(const DefnAstPtr& d, const Scope& scope, EvalContext& ctx,
                                      std::optional<Name> self)
{
    if (const auto* ref = std::get_if<DefinitionAst::VarRef>(&d->node)) {
        TREO_TRY(NameArray a, eval_variable(ref->var, scope, ctx));
        if (!a.is_atom())
            return make_error(ErrorKind::TypeMismatch,
                              "a definition reference must be a single name", d->span);
        const Value* v = scope.lookup(a.atom());
        if (!v)
            return make_error(ErrorKind::UnboundName, "'" + to_string(a.atom()) + "' is not bound",
                              d->span);
        if (!v->is_definition())
            return make_error(ErrorKind::TypeMismatch,
                              "'" + to_string(a.atom()) + "' is " + type_name(*v)
                                  + ", not a definition",
                              d->span);
        return v->as_definition();
    }
    const auto& s = std::get<DefinitionAst::Structure>(d->node);
    auto dv = std::make_shared<DefinitionValue>();
    if (self)
        dv->name = to_string(*self);
    dv->captured = scope;
    dv->self_name = self;
    dv->source = std::shared_ptr<const DefinitionAst::Structure>(d, &s);
    dv->span = d->span;
    return DefinitionPtr(std::move(dv));
}

Result<Component> eval_component(const ComponentAst& c, const Scope& scope, EvalContext& ctx)
{
    const Span span = c.span;
    return std::visit(
        [&](const auto& n) -> Result<Component> {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, ComponentAst::VarRef>) {
                TREO_TRY(NameArray a, eval_variable(n.var, scope, ctx));
                if (!a.is_atom())
                    return make_error(ErrorKind::TypeMismatch,
                                      "a component reference must be a single name", span);
                const Value* v = scope.lookup(a.atom());
                if (!v)
                    return make_error(ErrorKind::UnboundName,
                                      "'" + to_string(a.atom()) + "' is not bound", span);
                if (v->is_component())
                    return v->as_component();
                if (v->is_definition())
                    return make_error(ErrorKind::TypeMismatch,
                                      "'" + to_string(a.atom())
                                          + "' is a definition; instantiate it with (...)",
                                      span);
                return make_error(ErrorKind::TypeMismatch,
                                  "'" + to_string(a.atom()) + "' is " + type_name(*v)
                                      + ", not a component",
                                  span);
            } else if constexpr (std::is_same_v<T, ComponentAst::Atoms>) {
                AtomContext actx;
                if (!ctx.stack().empty()) {
                    const auto& frame = ctx.stack().back();
                    actx.ports = frame.defn->source->nodes;
                    actx.params = *frame.values;
                    actx.origin = frame.defn->name;
                }
                std::optional<EvalError> first;
                for (const auto& atom : n.atoms) {
                    auto r = ctx.sort().from_atom(atom, actx);
                    if (r.ok())
                        return std::move(r).value();
                    if (!first)
                        first = std::move(r).error();
                }
                if (first)
                    return std::move(*first);
                return make_error(ErrorKind::Atom, "an atom block needs at least one representation",
                                  span);
            } else if constexpr (std::is_same_v<T, ComponentAst::Composition>) {
                Component acc = ctx.sort().trivial();
                for (const auto& part : n.parts) {
                    TREO_TRY(Component p, eval_component(*part, scope, ctx));
                    TREO_TRY(acc, ctx.sort().compose(acc, p));
                }
                return acc;
            } else if constexpr (std::is_same_v<T, ComponentAst::Comprehension>) {
                TREO_TRY(Solutions sols, solve_predicate(*n.pred, scope, ctx));
                if (sols.infinite) {
                    ctx.warn("unbounded comprehension treated as trivial component", span);
                    for (const auto& v : sols.unbounded)
                        ctx.note("variable '" + v + "' has no positive membership atom to bound it",
                                 span);
                    return ctx.sort().trivial();
                }
                Component acc = ctx.sort().trivial();
                for (const auto& sol : sols.scopes)
                    for (const auto& part : n.body) {
                        TREO_TRY(Component p, eval_component(*part, sol, ctx));
                        TREO_TRY(acc, ctx.sort().compose(acc, p));
                    }
                return acc;
            } else if constexpr (std::is_same_v<T, ComponentAst::Instance>) {
                TREO_TRY(DefinitionPtr defn, eval_definition(n.defn, scope, ctx));
                std::vector<Value> values;
                if (n.values)
                    for (const auto& t : *n.values) {
                        TREO_TRY(Value v, eval_term(*t, scope, ctx));
                        values.push_back(std::move(v));
                    }
                TREO_TRY(NameArray nodes, eval_arguments(n.args, scope, ctx));
                auto applied = apply_definition(defn, values, nodes, ctx);
                if (!applied.ok() && !applied.error().span.valid())
                    applied.error().span = span;
                return applied;
            } else {
                return make_error(ErrorKind::Internal,
                                  "surface sugar must be desugared before evaluation", span);
            }
        },
        c.node);
}

namespace {

// --- index scope inference --------------------------------------------------
//
// Declared interfaces like a[1:k] pin their index variables through the
// lengths of the supplied arguments: a range index of length n forces
// hi - lo + 1 = n, which is solved for the one unknown endpoint by walking
// the affine operators. Anything beyond that single-range pattern is left to
// the verification pass, which evaluates the declarations for real.

std::optional<size_t> len_at(const Value& v, size_t depth)
{
    const Value* cur = &v;
    for (size_t i = 0; i < depth; ++i) {
        if (!cur->is_array() || cur->as_array().empty())
            return std::nullopt;
        cur = &cur->as_array().front();
    }
    if (!cur->is_array())
        return 0; // atoms have length zero
    return cur->as_array().size();
}

std::optional<size_t> len_at(const NameArray& a, size_t depth)
{
    const NameArray* cur = &a;
    for (size_t i = 0; i < depth; ++i) {
        if (!cur->is_list() || cur->list().empty())
            return std::nullopt;
        cur = &cur->list().front();
    }
    if (!cur->is_list())
        return 0; // atoms have length zero
    return cur->list().size();
}

using LenAt = std::function<std::optional<size_t>(size_t)>;

Result<std::optional<int64_t>> try_int(const TermAst& t, const Scope& s, EvalContext& ctx)
{
    auto r = eval_term(t, s, ctx);
    if (!r.ok()) {
        if (r.error().kind == ErrorKind::UnboundName)
            return std::optional<int64_t>{};
        return std::move(r).error();
    }
    if (!r.value().is_int())
        return make_error(ErrorKind::TypeMismatch,
                          std::string("an index bound must be an integer, got ")
                              + type_name(r.value()),
                          t.span);
    return std::optional<int64_t>(r.value().as_int());
}

// Solves t = target for the single unbound name in t, binding it into
// `inferred`. Returns false on an arithmetic contradiction.
Result<bool> invert(const TermAst& t, int64_t target, const Scope& base, Scope& inferred,
                    EvalContext& ctx)
{
    Scope full = scope_compose(base, inferred);
    auto direct = eval_term(t, full, ctx);
    if (direct.ok()) {
        const Value& v = direct.value();
        return v.is_int() && v.as_int() == target;
    }
    if (direct.error().kind != ErrorKind::UnboundName)
        return std::move(direct).error();
    return std::visit(
        [&](const auto& n) -> Result<bool> {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, TermAst::Var>) {
                auto a = eval_variable(n.var, full, ctx);
                if (!a.ok() || !a.value().is_atom())
                    return make_error(ErrorKind::Unsupported,
                                      "cannot infer an index through '" + print(n.var) + "'",
                                      t.span);
                inferred.bind_in_place(a.value().atom(), Value(target));
                return true;
            } else if constexpr (std::is_same_v<T, TermAst::Binary>) {
                TREO_TRY(auto lhs, try_int(*n.lhs, full, ctx));
                TREO_TRY(auto rhs, try_int(*n.rhs, full, ctx));
                if (!lhs && !rhs)
                    return make_error(ErrorKind::Unsupported,
                                      "cannot infer an index from a bound with two unknowns",
                                      t.span);
                switch (n.op) {
                case BinaryOp::Add:
                    return lhs ? invert(*n.rhs, target - *lhs, base, inferred, ctx)
                               : invert(*n.lhs, target - *rhs, base, inferred, ctx);
                case BinaryOp::Sub:
                    return lhs ? invert(*n.rhs, *lhs - target, base, inferred, ctx)
                               : invert(*n.lhs, target + *rhs, base, inferred, ctx);
                case BinaryOp::Mul: {
                    int64_t k = lhs ? *lhs : *rhs;
                    const TermAst& u = lhs ? *n.rhs : *n.lhs;
                    if (k == 0)
                        return make_error(ErrorKind::Unsupported,
                                          "cannot infer an index through a factor of zero",
                                          t.span);
                    if (target % k != 0)
                        return false;
                    return invert(u, target / k, base, inferred, ctx);
                }
                default:
                    return make_error(ErrorKind::Unsupported,
                                      "cannot infer an index through this operator", t.span);
                }
            } else if constexpr (std::is_same_v<T, TermAst::Neg>) {
                return invert(*n.operand, -target, base, inferred, ctx);
            } else {
                return make_error(ErrorKind::Unsupported,
                                  "cannot infer an index from this bound", t.span);
            }
        },
        t.node);
}

bool distributes(const TermAst& t)
{
    return std::holds_alternative<TermAst::ListLit>(t.node)
        || std::holds_alternative<TermAst::Slice>(t.node);
}

Result<bool> infer_decl(const VariableAst& decl, const LenAt& length, const Scope& base,
                        Scope& inferred, EvalContext& ctx)
{
    size_t depth = 0;
    for (const auto& il : decl.indices) {
        if (il.items.size() != 1)
            return true;
        const auto& item = il.items[0];
        if (item.kind == ListItemAst::Kind::Single) {
            if (distributes(*item.a))
                return true;
            continue; // a path step adds no nesting
        }
        if (item.kind == ListItemAst::Kind::Splice)
            return true;
        auto n = length(depth);
        ++depth;
        if (!n)
            return true;
        Scope full = scope_compose(base, inferred);
        TREO_TRY(auto lo, try_int(*item.a, full, ctx));
        TREO_TRY(auto hi, try_int(*item.b, full, ctx));
        int64_t want = int64_t(*n);
        if (lo && !hi) {
            TREO_TRY(bool consistent, invert(*item.b, *lo + want - 1, base, inferred, ctx));
            if (!consistent)
                return false;
        } else if (!lo && hi) {
            TREO_TRY(bool consistent, invert(*item.a, *hi - want + 1, base, inferred, ctx));
            if (!consistent)
                return false;
        }
        // both known: verification checks the length; both unknown: another
        // declaration may pin one of them, so a later pass retries
    }
    return true;
}

struct InferJob {
    const VariableAst* decl;
    LenAt length;
};

Result<Scope> infer_index_scope(const std::vector<InferJob>& jobs, const std::string& defn,
                                const Scope& base, EvalContext& ctx)
{
    Scope inferred;
    for (bool progress = true; progress;) {
        progress = false;
        for (const auto& job : jobs) {
            size_t before = inferred.size();
            TREO_TRY(bool consistent, infer_decl(*job.decl, job.length, base, inferred, ctx));
            if (!consistent)
                return make_error(ErrorKind::ShapeMismatch,
                                  "no index scope makes '" + print(*job.decl)
                                      + "' fit its argument in '" + defn + "'",
                                  job.decl->span);
            if (inferred.size() != before)
                progress = true;
        }
    }
    return inferred;
}

Result<Component> apply_impl(const DefinitionPtr& d, const std::vector<Value>& values,
                             const NameArray& nodes, EvalContext& ctx)
{
    if (!d->source)
        return make_error(ErrorKind::Internal, "definition value has no body", d->span);
    const auto& src = *d->source;

    const size_t wantValues = src.params ? src.params->size() : 0;
    if (wantValues != values.size())
        return make_error(ErrorKind::Arity,
                          "'" + d->name + "' takes " + std::to_string(wantValues)
                              + " parameter values, got " + std::to_string(values.size()),
                          d->span);
    if (!nodes.is_list())
        return make_error(ErrorKind::Internal, "node arguments must form a list", d->span);
    const auto& nodeActuals = nodes.list();
    if (src.nodes.size() != nodeActuals.size())
        return make_error(ErrorKind::Arity,
                          "'" + d->name + "' takes " + std::to_string(src.nodes.size())
                              + " node arguments, got " + std::to_string(nodeActuals.size()),
                          d->span);

    size_t occurrences = 0;
    for (const auto& f : ctx.stack())
        if (f.defn->uid == d->uid)
            ++occurrences;
    if (occurrences > 0 && ctx.options().strict_no_recursion)
        return make_error(ErrorKind::Recursion, "recursion rejected (strict semantics)", d->span);
    if (occurrences >= ctx.options().recursion_depth)
        return make_error(ErrorKind::Recursion,
                          "recursion depth cap (" + std::to_string(ctx.options().recursion_depth)
                              + ") exceeded in '" + d->name + "'",
                          d->span);

    ctx.stack().push_back({d.get(), &values});
    struct PopGuard {
        std::vector<EvalContext::Frame>& stack;
        ~PopGuard() { stack.pop_back(); }
    } guard{ctx.stack()};

    Scope sigma = d->captured;
    if (d->self_name)
        sigma.bind_in_place(*d->self_name, Value(d));

    std::vector<InferJob> jobs;
    if (src.params)
        for (size_t i = 0; i < src.params->size(); ++i) {
            const Value* actual = &values[i];
            jobs.push_back({&(*src.params)[i],
                            [actual](size_t depth) { return len_at(*actual, depth); }});
        }
    for (size_t i = 0; i < src.nodes.size(); ++i) {
        const NameArray* actual = &nodeActuals[i];
        jobs.push_back(
            {&src.nodes[i].var, [actual](size_t depth) { return len_at(*actual, depth); }});
    }
    TREO_TRY(Scope inferred, infer_index_scope(jobs, d->name, sigma, ctx));

    // Verify the declared shapes by evaluating them for real.
    const Scope full = scope_compose(sigma, inferred);
    auto declared = [&](const VariableAst& v) -> Result<NameArray> {
        auto r = eval_variable(v, full, ctx);
        if (!r.ok() && r.error().kind == ErrorKind::UnboundName)
            return make_error(ErrorKind::UnboundName,
                              "cannot infer the index scope of '" + d->name
                                  + "': " + r.error().message,
                              v.span);
        return r;
    };

    std::vector<NameArray> paramNames;
    if (src.params)
        for (size_t i = 0; i < src.params->size(); ++i) {
            TREO_TRY(NameArray s, declared((*src.params)[i]));
            if (!shape_match(s, values[i]))
                return make_error(ErrorKind::ShapeMismatch,
                                  "parameter '" + print((*src.params)[i]) + "' of '" + d->name
                                      + "' does not match the shape of " + to_string(values[i]),
                                  (*src.params)[i].span);
            paramNames.push_back(std::move(s));
        }
    std::vector<NameArray> nodeNames;
    for (size_t i = 0; i < src.nodes.size(); ++i) {
        TREO_TRY(NameArray p, declared(src.nodes[i].var));
        if (!shape_match(p, nodeActuals[i]))
            return make_error(ErrorKind::ShapeMismatch,
                              "node '" + print(src.nodes[i].var) + "' of '" + d->name
                                  + "' does not match the shape of " + to_string(nodeActuals[i]),
                              src.nodes[i].var.span);
        nodeNames.push_back(std::move(p));
    }

    // Every declared name must be distinct.
    NameSet seen;
    auto check_distinct = [&](const NameArray& a) -> Result<bool> {
        for (const auto& x : flatten_names(a))
            if (!seen.insert(x).second)
                return make_error(ErrorKind::DuplicateName,
                                  "'" + to_string(x) + "' is declared more than once in '"
                                      + d->name + "'",
                                  d->span);
        return true;
    };
    for (const auto& a : paramNames)
        TREO_CHECK(check_distinct(a));
    for (const auto& a : nodeNames)
        TREO_CHECK(check_distinct(a));

    // Parameter binding, checked against the inferred indices.
    Scope paramScope;
    for (size_t i = 0; i < paramNames.size(); ++i) {
        auto atoms = flatten_names(paramNames[i]);
        auto vals = flatten(values[i]);
        if (atoms.size() != vals.size())
            return make_error(ErrorKind::Internal, "shape match out of step", d->span);
        for (size_t j = 0; j < atoms.size(); ++j) {
            if (const Value* pinned = inferred.lookup(atoms[j]);
                pinned && !value_equal(*pinned, vals[j]))
                return make_error(ErrorKind::ShapeMismatch,
                                  "'" + to_string(atoms[j]) + "' is inferred as "
                                      + to_string(*pinned) + " from the declared shapes but"
                                      + " supplied as " + to_string(vals[j]),
                                  d->span);
            paramScope.bind_in_place(atoms[j], vals[j]);
        }
    }

    TREO_TRY(Component body,
             eval_component(*src.body, scope_compose(full, paramScope), ctx));

    // Rename the body's support: declared nodes to the supplied names,
    // declared parameters to their values, everything else to fresh hidden
    // names.
    std::map<Name, SubstArg> planned;
    NameSet used = ctx.sort().support(body);
    for (size_t i = 0; i < nodeNames.size(); ++i) {
        auto decls = flatten_names(nodeNames[i]);
        auto actuals = flatten_names(nodeActuals[i]);
        for (size_t j = 0; j < decls.size(); ++j) {
            planned.emplace(decls[j], SubstArg(actuals[j]));
            used.insert(actuals[j]);
        }
    }
    for (size_t i = 0; i < paramNames.size(); ++i) {
        auto decls = flatten_names(paramNames[i]);
        auto vals = flatten(values[i]);
        for (size_t j = 0; j < decls.size(); ++j)
            planned.emplace(decls[j], SubstArg(vals[j]));
    }
    std::vector<std::pair<Name, SubstArg>> binds;
    for (const Name& x : ctx.sort().support(body)) {
        auto it = planned.find(x);
        if (it != planned.end()) {
            binds.push_back({x, it->second});
            continue;
        }
        Name fresh = ctx.supply().fresh(x, used);
        used.insert(fresh);
        binds.push_back({x, SubstArg(std::move(fresh))});
    }
    return simultaneous_substitute(ctx.sort(), std::move(body), binds);
}

} // namespace

Result<Component> apply_definition(const DefinitionPtr& d, const std::vector<Value>& values,
                                   const NameArray& nodes, EvalContext& ctx)
{
    auto result = apply_impl(d, values, nodes, ctx);
    if (!result.ok())
        result.error().trace.push_back("instantiating '" + d->name + "'");
    return result;
}

Result<Scope> eval_file(const SourceFileAst& ast, const Scope& initial, EvalContext& ctx,
                        const ImportResolver& resolver)
{
    Scope scope = initial;
    for (const auto& mod : ast.imports) {
        if (!resolver)
            return make_error(ErrorKind::Import, "no import resolver available for '" + mod + "'");
        auto r = resolver(mod);
        if (!r.ok()) {
            auto err = std::move(r).error();
            err.trace.push_back("importing '" + mod + "'");
            return err;
        }
        scope = scope_compose(scope, r.value());
    }
    for (const auto& asg : ast.assignments) {
        auto dv = eval_definition(asg.defn, scope, ctx, Name(asg.name));
        if (!dv.ok()) {
            auto err = std::move(dv).error();
            err.trace.push_back("defining '" + asg.name + "'");
            return err;
        }
        scope.bind_in_place(Name(asg.name), Value(std::move(dv).value()));
    }
    return scope;
}

} // namespace treo
