#include "doctest.h"

#include <algorithm>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "treo/automaton.hpp"
#include "treo/ca_sort.hpp"
#include "treo/desugar.hpp"
#include "treo/eval.hpp"
#include "treo/io_sort.hpp"
#include "treo/parser.hpp"

using namespace treo;
using namespace treo::testing;

namespace {

const IoSort& io()
{
    static IoSort sort(ca_sort());
    return sort;
}

const char* kPrims =
    "sync(a?,b!) { q -{a,b}, b = a -> q; }\n"
    "syncdrain(a?,b?) { q -{a,b} -> q; }\n"
    "fifo1(a?,b!) { e -{a}, m' = a -> f; f -{b}, b = m -> e; }\n";

Scope load(const std::string& src, EvalContext& ctx, Scope initial = {},
           const ImportResolver& imports = {})
{
    auto file = desugar(parse_file(src));
    auto r = eval_file(file, initial, ctx, imports);
    if (!r.ok())
        FAIL(r.error().render());
    return std::move(r).value();
}

DefinitionPtr defn(const Scope& s, const std::string& name)
{
    const Value* v = s.lookup(Name(name));
    REQUIRE(v != nullptr);
    REQUIRE(v->is_definition());
    return v->as_definition();
}

NameArray atoms(std::initializer_list<const char*> ns)
{
    NameArray::List out;
    for (const char* n : ns)
        out.push_back(NameArray(Name(n)));
    return NameArray(std::move(out));
}

std::vector<std::string> origins(const Component& c)
{
    std::vector<std::string> out;
    for (const auto& e : composite_of(c).elements())
        out.push_back(e.origin);
    return out;
}

bool hidden(const Name& n) { return !n.base.empty() && n.base[0] == '$'; }

size_t hidden_count(const NameSet& s)
{
    return size_t(std::count_if(s.begin(), s.end(), [](const Name& n) { return hidden(n); }));
}

Result<Value> term(const std::string& src, const Scope& s, EvalContext& ctx)
{
    auto t = parse_term(src);
    return eval_term(*t, s, ctx);
}

std::string tstr(const std::string& src, const Scope& s, EvalContext& ctx)
{
    auto r = term(src, s, ctx);
    if (!r.ok())
        FAIL(r.error().render());
    return to_string(r.value());
}

NameArray var(const std::string& src, const Scope& s, EvalContext& ctx)
{
    auto t = parse_term(src);
    const auto& v = std::get<TermAst::Var>(t->node);
    auto r = eval_variable(v.var, s, ctx);
    if (!r.ok())
        FAIL(r.error().render());
    return std::move(r).value();
}

} // namespace

TEST_CASE("terms evaluate literals, slices and lists")
{
    EvalContext ctx(ca_sort());
    Scope s = Scope{}.bind(Name("k"), Value(int64_t(4)));

    CHECK(tstr("1:3", s, ctx) == "[1, 2]");
    CHECK(tstr("[1:3]", s, ctx) == "[[1, 2, 3]]");
    CHECK(tstr("[2..k]", s, ctx) == "[2, 3, 4]");
    CHECK(tstr("[1, 5..7, 9]", s, ctx) == "[1, 5, 6, 7, 9]");
    CHECK(tstr("len([4,5,6])", s, ctx) == "3");
    CHECK(tstr("[4,5,6][0]", s, ctx) == "4");
    CHECK(tstr("0 - 3", s, ctx) == "-3");
    CHECK(tstr("2 * k + 1", s, ctx) == "9");

    auto oob = term("[4,5,6][5]", s, ctx);
    REQUIRE_FALSE(oob.ok());
    CHECK(oob.error().kind == ErrorKind::OutOfRange);

    auto huge = term("18000000000000000000", s, ctx);
    REQUIRE_FALSE(huge.ok());
    CHECK(huge.error().kind == ErrorKind::Arithmetic);

    auto unbound = term("q", s, ctx);
    REQUIRE_FALSE(unbound.ok());
    CHECK(unbound.error().kind == ErrorKind::UnboundName);
    CHECK(unbound.error().message == "'q' is not bound");

    auto fn = term("frob(x)", s, ctx);
    REQUIRE_FALSE(fn.ok());
    CHECK(fn.error().kind == ErrorKind::UnboundName);
    CHECK(fn.error().message == "'frob' is not bound");
}

TEST_CASE("variables form paths and distribute list indices")
{
    EvalContext ctx(ca_sort());
    Scope s;

    NameArray path = var("a[1,2]", s, ctx);
    REQUIRE(path.is_atom());
    CHECK(path.atom() == Name("a", {1, 2}));

    NameArray dist = var("a[[1,2]]", s, ctx);
    CHECK(flatten_names(dist) == std::vector<Name>{Name("a", {1}), Name("a", {2})});

    NameArray range = var("a[1:2]", s, ctx);
    CHECK(flatten_names(range) == std::vector<Name>{Name("a", {1}), Name("a", {2})});

    Scope pv = Scope{}.bind(Name("p", {1}), Value(int64_t(10))).bind(Name("p", {2}), Value(int64_t(20)));
    CHECK(tstr("p[[1,2]]", pv, ctx) == "[10, 20]");

    auto neg = term("p[0-1]", pv, ctx);
    REQUIRE_FALSE(neg.ok());
    CHECK(neg.error().kind == ErrorKind::TypeMismatch);
    CHECK(neg.error().message == "a name index must be made of naturals");
}

TEST_CASE("applying a primitive renames its ports to the actuals")
{
    EvalContext ctx(io());
    Scope s = load(kPrims, ctx);

    auto r = apply_definition(defn(s, "fifo1"), {}, atoms({"x", "y"}), ctx);
    REQUIRE(r.ok());
    const auto& es = composite_of(r.value()).elements();
    REQUIRE(es.size() == 1);
    CHECK(es[0].kind == IoElement::Kind::Primitive);
    CHECK(es[0].origin == "fifo1");
    CHECK(es[0].inputs == NameSet{Name("x")});
    CHECK(es[0].outputs == NameSet{Name("y")});

    const auto& ca = automaton_of(es[0].inner);
    CHECK(ca.initial == "e");
    CHECK(ca.inputs == NameSet{Name("x")});
    CHECK(ca.outputs == NameSet{Name("y")});
    REQUIRE(ca.memory.size() == 1);
    CHECK(ca.memory[0].name == "m");
    REQUIRE(ca.transitions.size() == 2);
    CHECK(ca.transitions[0].sync == NameSet{Name("x")});
    CHECK(ca.transitions[1].sync == NameSet{Name("y")});
}

TEST_CASE("a composite hides its internal names after application")
{
    EvalContext ctx(io());
    Scope prims = load(kPrims, ctx);
    ImportResolver res = [&](const std::string& mod) -> Result<Scope> {
        if (prims.lookup(Name(mod)))
            return prims;
        return make_error(ErrorKind::Import, "module '" + mod + "' is not available");
    };
    Scope s = load(fixture("corpus/alternator2.treo"), ctx, {}, res);

    auto r = apply_definition(defn(s, "alternator2"), {}, atoms({"a1", "a2", "b1"}), ctx);
    REQUIRE(r.ok());
    const Component& c = r.value();

    CHECK(origins(c) == std::vector<std::string>{"sync", "syncdrain", "sync", "fifo1"});
    NameSet support = io().support(c);
    CHECK(support.size() == 4);
    CHECK(hidden_count(support) == 1);
    CHECK(support.count(Name("a1")) == 1);
    CHECK(support.count(Name("a2")) == 1);
    CHECK(support.count(Name("b1")) == 1);

    const auto& es = composite_of(c).elements();
    CHECK(es[0].inputs == NameSet{Name("a1")});
    CHECK(es[0].outputs == NameSet{Name("b1")});
    CHECK(es[3].outputs == NameSet{Name("b1")});
    REQUIRE(es[3].inputs.size() == 1);
    CHECK(hidden(*es[3].inputs.begin()));
}

TEST_CASE("repeated application is equal up to the choice of hidden names")
{
    const std::string src = std::string(kPrims)
        + "alternator2(a1,a2,b1) { sync(a1,b1) syncdrain(a1,a2) sync(a2,b2) fifo1(b2,b1) }\n";

    EvalContext ctx(io());
    Scope s = load(src, ctx);
    auto d = defn(s, "alternator2");

    auto first = apply_definition(d, {}, atoms({"a1", "a2", "b1"}), ctx);
    auto second = apply_definition(d, {}, atoms({"a1", "a2", "b1"}), ctx);
    REQUIRE(first.ok());
    REQUIRE(second.ok());
    CHECK(io().support(first.value()) != io().support(second.value()));
    CHECK(first.value().structurally_equal(second.value()));

    EvalContext ctx2(io());
    Scope s2 = load(src, ctx2);
    auto again = apply_definition(defn(s2, "alternator2"), {}, atoms({"a1", "a2", "b1"}), ctx2);
    REQUIRE(again.ok());
    CHECK(io().support(first.value()) == io().support(again.value()));
    CHECK(first.value().structurally_equal(again.value()));
}

TEST_CASE("a parameterized definition matches its hand-unrolled form")
{
    const std::string src = std::string(kPrims) + fixture("corpus/alternator_k.treo")
        + "alt2h(a[1:2],b[1]) { sync(a[1],b[1])"
          " syncdrain(a[1],a[2]) sync(a[2],b[2]) fifo1(b[2],b[1]) }\n";

    EvalContext ctx(io());
    Scope s = load(src, ctx);
    NameArray ns(NameArray::List{atoms({"x1", "x2"}), NameArray(Name("y"))});

    auto general = apply_definition(defn(s, "alternator"), {Value(int64_t(2))}, ns, ctx);
    auto unrolled = apply_definition(defn(s, "alt2h"), {}, ns, ctx);
    REQUIRE(general.ok());
    REQUIRE(unrolled.ok());
    CHECK(origins(general.value()) == origins(unrolled.value()));
    CHECK(general.value().structurally_equal(unrolled.value()));

    NameArray ns3(NameArray::List{atoms({"x1", "x2", "x3"}), NameArray(Name("y"))});
    auto three = apply_definition(defn(s, "alternator"), {Value(int64_t(3))}, ns3, ctx);
    REQUIRE(three.ok());
    CHECK(composite_of(three.value()).elements().size() == 7);
    NameSet support = io().support(three.value());
    CHECK(support.count(Name("x3")) == 1);
    CHECK(hidden_count(support) == 2);
}

TEST_CASE("a comprehension composes one body copy per solution")
{
    EvalContext ctx(io());
    Scope s = load(kPrims, ctx);

    auto comp = desugar(parse_component("{ sync(a[i], b[i]) | i in [1,2] }"));
    auto r = eval_component(*comp, s, ctx);
    REQUIRE(r.ok());
    const auto& es = composite_of(r.value()).elements();
    REQUIRE(es.size() == 2);
    CHECK(es[0].inputs == NameSet{Name("a", {1})});
    CHECK(es[0].outputs == NameSet{Name("b", {1})});
    CHECK(es[1].inputs == NameSet{Name("a", {2})});
    CHECK(es[1].outputs == NameSet{Name("b", {2})});

    auto none = eval_component(*desugar(parse_component("{ sync(a, b) | false }")), s, ctx);
    REQUIRE(none.ok());
    CHECK(composite_of(none.value()).elements().empty());
    CHECK(ctx.diagnostics().empty());
}

TEST_CASE("an unbounded comprehension warns and collapses to the trivial component")
{
    EvalContext ctx(io());
    Scope s = load(kPrims, ctx);

    auto comp = desugar(parse_component("{ sync(x, y) | i > 0 }"));
    auto r = eval_component(*comp, s, ctx);
    REQUIRE(r.ok());
    CHECK(composite_of(r.value()).elements().empty());

    REQUIRE(ctx.diagnostics().size() == 2);
    CHECK(ctx.diagnostics()[0].severity == Diagnostic::Severity::Warning);
    CHECK(ctx.diagnostics()[0].message == "unbounded comprehension treated as trivial component");
    CHECK(ctx.diagnostics()[1].severity == Diagnostic::Severity::Note);
    CHECK(ctx.diagnostics()[1].message.find("'i'") != std::string::npos);

    auto again = eval_component(*comp, s, ctx);
    REQUIRE(again.ok());
    CHECK(ctx.diagnostics().size() == 2);
}

TEST_CASE("arity and shape mismatches are rejected with the offending names")
{
    const std::string src = std::string(kPrims) + fixture("corpus/alternator_k.treo");
    EvalContext ctx(io());
    Scope s = load(src, ctx);

    auto fewNodes = apply_definition(defn(s, "sync"), {}, atoms({"x"}), ctx);
    REQUIRE_FALSE(fewNodes.ok());
    CHECK(fewNodes.error().kind == ErrorKind::Arity);
    CHECK(fewNodes.error().message == "'sync' takes 2 node arguments, got 1");

    auto extraValues = apply_definition(defn(s, "sync"), {Value(int64_t(1))}, atoms({"x", "y"}), ctx);
    REQUIRE_FALSE(extraValues.ok());
    CHECK(extraValues.error().kind == ErrorKind::Arity);
    CHECK(extraValues.error().message == "'sync' takes 0 parameter values, got 1");

    NameArray ns3(NameArray::List{atoms({"x1", "x2", "x3"}), NameArray(Name("y"))});
    auto pinned = apply_definition(defn(s, "alternator"), {Value(int64_t(5))}, ns3, ctx);
    REQUIRE_FALSE(pinned.ok());
    CHECK(pinned.error().kind == ErrorKind::ShapeMismatch);
    CHECK(pinned.error().message.find("'k' is inferred as 3") != std::string::npos);
    CHECK(pinned.error().message.find("supplied as 5") != std::string::npos);

    NameArray flat = atoms({"c", "d"});
    auto shape = apply_definition(defn(s, "alternator"), {Value(int64_t(2))}, flat, ctx);
    REQUIRE_FALSE(shape.ok());
    CHECK(shape.error().kind == ErrorKind::ShapeMismatch);
    CHECK(shape.error().message.find("does not match the shape") != std::string::npos);
}

TEST_CASE("duplicate declared names are rejected")
{
    const std::string src = std::string(kPrims) + "g(a, a) { sync(a, a) }\n";
    EvalContext ctx(io());
    Scope s = load(src, ctx);

    auto r = apply_definition(defn(s, "g"), {}, atoms({"x", "y"}), ctx);
    REQUIRE_FALSE(r.ok());
    CHECK(r.error().kind == ErrorKind::DuplicateName);
    CHECK(r.error().message.find("'a' is declared more than once") != std::string::npos);
}

TEST_CASE("value parameters instantiate ports inside the automaton")
{
    const std::string src = std::string(kPrims) + "w<v>(a?) { sync(a, v) }\n";
    EvalContext ctx(io());
    Scope s = load(src, ctx);

    auto r = apply_definition(defn(s, "w"), {Value(int64_t(7))}, atoms({"x"}), ctx);
    REQUIRE(r.ok());
    const auto& es = composite_of(r.value()).elements();
    REQUIRE(es.size() == 1);
    CHECK(es[0].inputs == NameSet{Name("x")});
    CHECK(es[0].outputs.empty());

    const auto& ca = automaton_of(es[0].inner);
    REQUIRE(ca.transitions.size() == 1);
    CHECK(ca.transitions[0].sync == NameSet{Name("x")});
    REQUIRE(ca.transitions[0].guard.size() == 2);
    CHECK(ca.transitions[0].guard[0] == CaEquality{CaPort{Name("v")}, CaPort{Name("x")}});
    CHECK(ca.transitions[0].guard[1] == CaEquality{CaPort{Name("v")}, CaTerm(Value(int64_t(7)))});
}

TEST_CASE("definitions flow through value parameters")
{
    const std::string src = std::string(kPrims) + "apply2<f>(x?,y!) { f(x, y) }\n";
    EvalContext ctx(io());
    Scope s = load(src, ctx);

    auto r = apply_definition(defn(s, "apply2"), {Value(defn(s, "sync"))}, atoms({"u", "w"}), ctx);
    REQUIRE(r.ok());
    const auto& es = composite_of(r.value()).elements();
    REQUIRE(es.size() == 1);
    CHECK(es[0].origin == "sync");
    CHECK(es[0].inputs == NameSet{Name("u")});
    CHECK(es[0].outputs == NameSet{Name("w")});
}

TEST_CASE("unguarded self-application hits the recursion controls")
{
    const std::string src = std::string(kPrims) + "r(x?) { r(x) }\n";

    EvalOptions capped;
    capped.recursion_depth = 5;
    EvalContext ctx(io(), capped);
    Scope s = load(src, ctx);
    auto deep = apply_definition(defn(s, "r"), {}, atoms({"x"}), ctx);
    REQUIRE_FALSE(deep.ok());
    CHECK(deep.error().kind == ErrorKind::Recursion);
    CHECK(deep.error().message.find("depth cap (5)") != std::string::npos);
    CHECK(deep.error().message.find("'r'") != std::string::npos);

    EvalOptions strict;
    strict.strict_no_recursion = true;
    EvalContext sctx(io(), strict);
    Scope s2 = load(src, sctx);
    auto rejected = apply_definition(defn(s2, "r"), {}, atoms({"x"}), sctx);
    REQUIRE_FALSE(rejected.ok());
    CHECK(rejected.error().kind == ErrorKind::Recursion);
    CHECK(rejected.error().message.find("strict") != std::string::npos);
}

TEST_CASE("guarded recursion unrolls while the guard holds")
{
    const std::string src = std::string(kPrims)
        + "ra(a[1:k],b[1:k]) {\n"
          "  { sync(a[1],b[1]) | k = 1 }\n"
          "  { ra(a[1:k-1],b[1:k-1]) syncdrain(a[k-1],a[k]) sync(a[k],b[k]) fifo1(b[k],b[k-1])"
          " | k > 1 }\n"
          "}\n";

    EvalContext ctx(io());
    Scope s = load(src, ctx);
    auto d = defn(s, "ra");

    NameArray one(NameArray::List{atoms({"x1"}), atoms({"y1"})});
    auto base = apply_definition(d, {}, one, ctx);
    REQUIRE(base.ok());
    CHECK(origins(base.value()) == std::vector<std::string>{"sync"});
    CHECK(io().support(base.value()) == NameSet{Name("x1"), Name("y1")});

    NameArray two(NameArray::List{atoms({"x1", "x2"}), atoms({"y1", "y2"})});
    auto step = apply_definition(d, {}, two, ctx);
    REQUIRE(step.ok());
    CHECK(origins(step.value()) == std::vector<std::string>{"sync", "syncdrain", "sync", "fifo1"});
    CHECK(io().support(step.value())
          == NameSet{Name("x1"), Name("x2"), Name("y1"), Name("y2")});

    EvalOptions strict;
    strict.strict_no_recursion = true;
    EvalContext sctx(io(), strict);
    Scope s2 = load(src, sctx);
    auto baseStrict = apply_definition(defn(s2, "ra"), {}, one, sctx);
    CHECK(baseStrict.ok());
    auto stepStrict = apply_definition(defn(s2, "ra"), {}, two, sctx);
    REQUIRE_FALSE(stepStrict.ok());
    CHECK(stepStrict.error().kind == ErrorKind::Recursion);
}

TEST_CASE("files bind assignments in order and later ones shadow")
{
    const std::string src = std::string(kPrims)
        + "x(p?) { sync(p, p) }\n"
          "x(p?,q!) { sync(p, q) }\n"
          "y sync\n";
    EvalContext ctx(io());
    Scope s = load(src, ctx);

    auto two = apply_definition(defn(s, "x"), {}, atoms({"u", "w"}), ctx);
    CHECK(two.ok());
    auto oneArg = apply_definition(defn(s, "x"), {}, atoms({"u"}), ctx);
    REQUIRE_FALSE(oneArg.ok());
    CHECK(oneArg.error().kind == ErrorKind::Arity);

    CHECK(defn(s, "y").get() == defn(s, "sync").get());
}

TEST_CASE("imports go through the resolver and failures carry the module name")
{
    auto file = desugar(parse_file("import m;\nx m\n"));
    EvalContext ctx(io());

    auto bare = eval_file(file, {}, ctx, {});
    REQUIRE_FALSE(bare.ok());
    CHECK(bare.error().kind == ErrorKind::Import);
    CHECK(bare.error().message.find("no import resolver") != std::string::npos);

    ImportResolver failing = [](const std::string& mod) -> Result<Scope> {
        return make_error(ErrorKind::Import, "module '" + mod + "' is not on the search path");
    };
    auto failed = eval_file(file, {}, ctx, failing);
    REQUIRE_FALSE(failed.ok());
    CHECK(failed.error().render().find("importing 'm'") != std::string::npos);
}

TEST_CASE("an opaque atom has no automaton semantics")
{
    const std::string src = "o(a?,b!) { \"Some.java\" \"Other.java\" }\n";
    EvalContext ctx(io());
    Scope s = load(src, ctx);

    auto r = apply_definition(defn(s, "o"), {}, atoms({"x", "y"}), ctx);
    REQUIRE_FALSE(r.ok());
    CHECK(r.error().kind == ErrorKind::Atom);
    CHECK(r.error().message.find("no automaton semantics") != std::string::npos);
}

TEST_CASE("the team and match programs evaluate end to end")
{
    const std::string stubs = std::string(kPrims)
        + "fifo1full<x>(a?,b!) { start full;"
          " empty -{a}, m' = a -> full; full -{b}, b = m -> empty; }\n"
          "parse(a?,b!) { q -{a,b}, b = a -> q; }\n"
          "move(a?,b!) { q -{a,b}, b = a -> q; }\n"
          "majority(a?,b!) { q -{a,b}, b = a -> q; }\n"
          "concatenate(x?,y?,z!) { q -{x,y,z}, z = x -> q; }\n"
          "eng1(a?,b!) { q -{a,b}, b = a -> q; }\n"
          "eng2(a?,b!) { q -{a,b}, b = a -> q; }\n"
          "eng3(a?,b!) { q -{a,b}, b = a -> q; }\n";

    EvalContext ctx(io());
    Scope base = load(stubs, ctx);
    ImportResolver res = [&](const std::string& mod) -> Result<Scope> {
        if (base.lookup(Name(mod)))
            return base;
        return make_error(ErrorKind::Import, "module '" + mod + "' is not available");
    };
    Scope withTeam = load(fixture("corpus/team.treo"), ctx, base, res);
    Scope s = load(fixture("corpus/match.treo"), ctx, withTeam, res);

    auto r = apply_definition(defn(s, "match"), {}, NameArray(NameArray::List{}), ctx);
    REQUIRE(r.ok());
    const auto& es = composite_of(r.value()).elements();
    CHECK(es.size() == 21);

    NameSet support = io().support(r.value());
    CHECK(hidden_count(support) == support.size());

    auto names = origins(r.value());
    for (const char* expected : {"fifo1full", "eng1", "eng2", "eng3", "majority"})
        CHECK(std::count(names.begin(), names.end(), std::string(expected)) >= 1);

    auto full = std::find_if(es.begin(), es.end(),
                             [](const IoElement& e) { return e.origin == "fifo1full"; });
    REQUIRE(full != es.end());
    const auto& ca = automaton_of(full->inner);
    CHECK(ca.initial == "full");
    REQUIRE(ca.memory.size() == 1);
    CHECK(ca.memory[0].init == Value(""));
}
