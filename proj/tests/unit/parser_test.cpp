#include "doctest.h"

#include <string>

#include "helpers.hpp"
#include "treo/ast.hpp"
#include "treo/error.hpp"
#include "treo/parser.hpp"
#include "treo/printer.hpp"

using namespace treo;
using treo::testing::corpus_files;
using treo::testing::fixture;

namespace {

std::string canon_file(const std::string& src) { return print(parse_file(src)); }
std::string canon_term(const std::string& src) { return print(*parse_term(src)); }
std::string canon_pred(const std::string& src) { return print(*parse_predicate(src)); }
std::string canon_comp(const std::string& src) { return print(*parse_component(src)); }

} // namespace

TEST_CASE("printing then reparsing reaches a fixpoint on every corpus file")
{
    for (const auto& rel : corpus_files()) {
        CAPTURE(rel);
        std::string once = canon_file(fixture(rel));
        CHECK(canon_file(once) == once);
    }
}

TEST_CASE("a composite definition parses into instances over shared nodes")
{
    auto file = parse_file(fixture("corpus/alternator2.treo"));
    CHECK(file.imports == std::vector<std::string>{"syncdrain", "sync", "fifo1"});
    REQUIRE(file.assignments.size() == 1);
    CHECK(file.assignments[0].name == "alternator2");

    const auto& defn = std::get<DefinitionAst::Structure>(file.assignments[0].defn->node);
    CHECK_FALSE(defn.params.has_value());
    REQUIRE(defn.nodes.size() == 3);
    CHECK(defn.nodes[0].var.base == "a1");
    CHECK(defn.nodes[0].io == IoMarker::None);

    const auto& body = std::get<ComponentAst::Composition>(defn.body->node);
    REQUIRE(body.parts.size() == 4);
    const auto& inst = std::get<ComponentAst::Instance>(body.parts[0]->node);
    CHECK_FALSE(inst.values.has_value());
    REQUIRE(inst.args.size() == 2);
    CHECK(inst.args[0].base == "a1");
    CHECK(inst.args[1].base == "b1");

    CHECK(print(file) == "import syncdrain;\nimport sync;\nimport fifo1;\n"
                         "alternator2 (a1, a2, b1) "
                         "{ sync(a1, b1) syncdrain(a1, a2) sync(a2, b2) fifo1(b2, b1) }\n");
}

TEST_CASE("an automaton body parses states, ports, and guards")
{
    auto file = parse_file(fixture("corpus/fifo1_ca.treo"));
    REQUIRE(file.assignments.size() == 1);
    const auto& defn = std::get<DefinitionAst::Structure>(file.assignments[0].defn->node);
    REQUIRE(defn.nodes.size() == 2);
    CHECK(defn.nodes[0].io == IoMarker::Input);
    CHECK(defn.nodes[1].io == IoMarker::Output);

    const auto& atoms = std::get<ComponentAst::Atoms>(defn.body->node);
    REQUIRE(atoms.atoms.size() == 1);
    const auto& ca = std::get<AtomAst::Automaton>(atoms.atoms[0].node);
    CHECK_FALSE(ca.start.has_value());
    REQUIRE(ca.transitions.size() == 2);
    CHECK(ca.transitions[0].from == "empty");
    CHECK(ca.transitions[0].to == "full");
    CHECK(ca.transitions[0].sync == std::vector<std::string>{"a"});
    CHECK(ca.transitions[0].guard.empty());

    CHECK(print(file) == "fifo1 (a?, b!) { empty -{a} -> full; full -{b} -> empty; }\n");
}

TEST_CASE("automata support start states, memory guards, and multiple ports")
{
    auto comp = parse_component(
        "{ start q0; q0 -{a, b}, m' = a, b = m -> q1; q1 -{}, m' = m -> q0; }");
    const auto& atoms = std::get<ComponentAst::Atoms>(comp->node);
    REQUIRE(atoms.atoms.size() == 1);
    const auto& ca = std::get<AtomAst::Automaton>(atoms.atoms[0].node);
    REQUIRE(ca.start.has_value());
    CHECK(*ca.start == "q0");
    REQUIRE(ca.transitions.size() == 2);
    REQUIRE(ca.transitions[0].guard.size() == 2);
    CHECK(ca.transitions[0].guard[0].lhs.kind == GuardTermAst::Kind::PrimedIdent);
    CHECK(ca.transitions[0].guard[0].lhs.ident == "m");
    CHECK(ca.transitions[0].guard[0].rhs.kind == GuardTermAst::Kind::Ident);
    CHECK(ca.transitions[1].sync.empty());

    std::string once = canon_comp(
        "{ start q0; q0 -{a, b}, m' = a, b = m -> q1; q1 -{}, m' = m -> q0; }");
    CHECK(canon_comp(once) == once);
    CHECK(once == "{ start q0; q0 -{a, b}, m' = a, b = m -> q1; q1 -{}, m' = m -> q0; }");
}

TEST_CASE("guard literals may be numbers, strings, and booleans")
{
    auto comp = parse_component("{ q -{a}, a = 1, b = -2, c = \"x\", d = true -> q; }");
    const auto& ca =
        std::get<AtomAst::Automaton>(std::get<ComponentAst::Atoms>(comp->node).atoms[0].node);
    const auto& g = ca.transitions[0].guard;
    REQUIRE(g.size() == 4);
    CHECK(g[0].rhs.kind == GuardTermAst::Kind::Int);
    CHECK(g[0].rhs.int_value == 1);
    CHECK(g[1].rhs.int_value == -2);
    CHECK(g[2].rhs.kind == GuardTermAst::Kind::Text);
    CHECK(g[3].rhs.kind == GuardTermAst::Kind::Bool);

    CHECK_THROWS_AS(parse_component("{ q -{a}, false -> q; }"), SyntaxError);
}

TEST_CASE("opaque primitive bodies are kept verbatim")
{
    auto file = parse_file(fixture("corpus/fifo1_opaque.treo"));
    const auto& defn = std::get<DefinitionAst::Structure>(file.assignments[0].defn->node);
    const auto& atoms = std::get<ComponentAst::Atoms>(defn.body->node);
    REQUIRE(atoms.atoms.size() == 1);
    CHECK(std::get<AtomAst::Opaque>(atoms.atoms[0].node).text == "MyFIFO1.java");
    CHECK(print(file) == "fifo1 (a?, b!) { \"MyFIFO1.java\" }\n");
}

TEST_CASE("parameterised interfaces carry index ranges")
{
    auto file = parse_file(fixture("corpus/alternator_k.treo"));
    const auto& defn = std::get<DefinitionAst::Structure>(file.assignments[0].defn->node);
    REQUIRE(defn.params.has_value());
    REQUIRE(defn.params->size() == 1);
    CHECK((*defn.params)[0].base == "k");

    REQUIRE(defn.nodes.size() == 2);
    const auto& a = defn.nodes[0].var;
    REQUIRE(a.indices.size() == 1);
    REQUIRE(a.indices[0].items.size() == 1);
    CHECK(a.indices[0].items[0].kind == ListItemAst::Kind::Range);

    const auto& body = std::get<ComponentAst::Composition>(defn.body->node);
    REQUIRE(body.parts.size() == 2);
    const auto& loop = std::get<ComponentAst::Comprehension>(body.parts[1]->node);
    CHECK(loop.body.size() == 3);
    const auto& member = std::get<PredAst::Member>(loop.pred->node);
    CHECK(member.var.base == "i");

    CHECK(print(file) ==
          "alternator <k>(a[1:k], b[1]) { sync(a[1], b[1]) "
          "{ syncdrain(a[i - 1], a[i]) sync(a[i], b[i]) fifo1(b[i], b[i - 1]) | i in [2..k] } }\n");
}

TEST_CASE("definitions may instantiate themselves")
{
    auto file = parse_file(fixture("corpus/recursive_alternator.treo"));
    const auto& defn = std::get<DefinitionAst::Structure>(file.assignments[0].defn->node);
    REQUIRE(defn.nodes.size() == 3);
    const auto& body = std::get<ComponentAst::Composition>(defn.body->node);
    REQUIRE(body.parts.size() == 2);
    const auto& self = std::get<ComponentAst::Instance>(body.parts[0]->node);
    CHECK(print(*self.defn) == "recursive_alternator");
    CHECK(self.args.size() == 3);
}

TEST_CASE("definitions can be passed as parameters and instantiated")
{
    auto file = parse_file(fixture("corpus/team.treo"));
    CHECK(file.imports == std::vector<std::string>{"parse"});
    const auto& defn = std::get<DefinitionAst::Structure>(file.assignments[0].defn->node);
    REQUIRE(defn.params.has_value());
    CHECK((*defn.params)[0].base == "engine");

    const auto& body = std::get<ComponentAst::Composition>(defn.body->node);
    REQUIRE(body.parts.size() == 7);
    const auto& loop = std::get<ComponentAst::For>(body.parts[0]->node);
    CHECK(loop.var == "i");
    const auto& inner = std::get<ComponentAst::Composition>(loop.body->node);
    REQUIRE(inner.parts.size() == 3);
    const auto& engine = std::get<ComponentAst::Instance>(inner.parts[0]->node);
    CHECK(print(*engine.defn) == "engine[i]");
    const auto& cond = std::get<ComponentAst::If>(inner.parts[2]->node);
    REQUIRE(cond.branches.size() == 1);
    CHECK(cond.branches[0].pred != nullptr);

    std::string once = canon_file(fixture("corpus/team.treo"));
    CHECK(canon_file(once) == once);
}

TEST_CASE("instances accept value parameters")
{
    auto file = parse_file(fixture("corpus/match.treo"));
    const auto& defn = std::get<DefinitionAst::Structure>(file.assignments[0].defn->node);
    CHECK(defn.nodes.empty());
    const auto& body = std::get<ComponentAst::Composition>(defn.body->node);
    REQUIRE(body.parts.size() == 4);

    const auto& full = std::get<ComponentAst::Instance>(body.parts[0]->node);
    REQUIRE(full.values.has_value());
    REQUIRE(full.values->size() == 1);
    CHECK(std::get<TermAst::Text>((*full.values)[0]->node).value.empty());

    const auto& left = std::get<ComponentAst::Instance>(body.parts[2]->node);
    REQUIRE(left.values.has_value());
    const auto& engines = std::get<TermAst::ListLit>((*left.values)[0]->node);
    CHECK(engines.list.items.size() == 2);

    CHECK(print(file) == "match () { fifo1full<\"\">(a, b) fifo1(c, d) "
                         "team<[eng1, eng2]>(a, d) team<[eng3]>(b, c) }\n");
}

TEST_CASE("term precedence and associativity")
{
    CHECK(canon_term("1+2*3") == "1 + 2 * 3");
    CHECK(canon_term("(1+2)*3") == "(1 + 2) * 3");
    CHECK(canon_term("1-2-3") == "1 - 2 - 3");
    CHECK(canon_term("1-(2-3)") == "1 - (2 - 3)");
    CHECK(canon_term("2^3^2") == "2 ^ 3 ^ 2");
    CHECK(canon_term("(2^3)^2") == "(2 ^ 3) ^ 2");
    CHECK(canon_term("-2^2") == "-2 ^ 2");
    CHECK(canon_term("2^-3") == "2 ^ -3");
    CHECK(canon_term("-(1+2)") == "-(1 + 2)");
    CHECK(canon_term("7%2") == "7 % 2");
    CHECK(canon_term("1:k+1") == "1:k + 1");
    CHECK(canon_term("(a:b):c") == "(a:b):c");
    CHECK(canon_term("len(x)+1") == "len(x) + 1");
    CHECK(canon_term("1.25+0.5") == "1.25 + 0.5");
}

TEST_CASE("indexing forms are distinguished")
{
    CHECK(canon_term("a[1,2]") == "a[1, 2]");
    CHECK(canon_term("a[[1,2]]") == "a[[1, 2]]");
    CHECK(canon_term("a[1..2]") == "a[1..2]");
    CHECK(canon_term("a[1:2]") == "a[1:2]");
    CHECK(canon_term("a[1][2]") == "a[1][2]");
    CHECK(canon_term("[1,2,3][0]") == "[1, 2, 3][0]");

    auto t = parse_term("a[1..2]");
    const auto& var = std::get<TermAst::Var>(t->node);
    REQUIRE(var.var.indices.size() == 1);
    REQUIRE(var.var.indices[0].items.size() == 1);
    CHECK(var.var.indices[0].items[0].kind == ListItemAst::Kind::Splice);

    auto nested = parse_term("[1,2,3][0]");
    CHECK(std::holds_alternative<TermAst::Index>(nested->node));
}

TEST_CASE("terms may embed components and definitions")
{
    CHECK(canon_term("{ sync(a, b) }") == "{ sync(a, b) }");
    CHECK(canon_term("<n>(a, b) { sync(a, b) }") == "<n>(a, b) { sync(a, b) }");
    auto t = parse_term("sync(a, b)");
    CHECK(std::holds_alternative<TermAst::Comp>(t->node));
    auto d = parse_term("lib.sync");
    CHECK(std::holds_alternative<TermAst::Var>(d->node));
}

TEST_CASE("predicate precedence and connectives")
{
    CHECK(canon_pred("a and b or c") == "a and b or c");
    CHECK(canon_pred("a and (b or c)") == "a and (b or c)");
    CHECK(canon_pred("not a and b") == "not a and b");
    CHECK(canon_pred("not (a and b)") == "not (a and b)");
    CHECK(canon_pred("a implies b implies c") == "a implies b implies c");
    CHECK(canon_pred("(a implies b) implies c") == "(a implies b) implies c");
    CHECK(canon_pred("a, b") == "a and b");
    CHECK(canon_pred("x in [1,2]") == "x in [1, 2]");
    CHECK(canon_pred("k > 1") == "k > 1");
    CHECK(canon_pred("true") == "true");
    CHECK(canon_pred("1 = 2 or true") == "1 = 2 or true");
}

TEST_CASE("quantifiers take the longest body")
{
    std::string q = canon_pred("forall x in [1..3]: x > 0 and q");
    CHECK(q == "forall x in [1..3]: x > 0 and q");
    CHECK(canon_pred("(exists x in l: x > 0) and q") == "(exists x in l: x > 0) and q");
    auto p = parse_predicate("forall x in [1..3]: x > 0 and q");
    const auto& node = std::get<PredAst::Quant>(p->node);
    CHECK(node.universal);
    CHECK(std::holds_alternative<PredAst::And>(node.body->node));
}

TEST_CASE("sections and dotted imports")
{
    std::string src = "section lib.chess;\nimport lib.sync;\nx lib.sync\n";
    auto file = parse_file(src);
    REQUIRE(file.section.has_value());
    CHECK(*file.section == "lib.chess");
    CHECK(file.imports == std::vector<std::string>{"lib.sync"});
    const auto& ref = std::get<DefinitionAst::VarRef>(file.assignments[0].defn->node);
    CHECK(ref.var.base == "lib.sync");
    CHECK(canon_file(src) == "section lib.chess;\nimport lib.sync;\nx lib.sync\n");
}

TEST_CASE("malformed inputs are rejected with a location")
{
    CHECK_THROWS_AS(parse_file("alternator2(a1"), SyntaxError);
    CHECK_THROWS_AS(parse_file("x (a,b) { sync(a,b) } trailing 014"), SyntaxError);
    CHECK_THROWS_AS((void)parse_term("1 +"), SyntaxError);
    CHECK_THROWS_AS((void)parse_term("[1,"), SyntaxError);
    CHECK_THROWS_AS((void)parse_predicate("x in"), SyntaxError);
    CHECK_THROWS_AS(parse_component("{ q -{a} q; }"), SyntaxError);
    try {
        parse_file("x (a,b) { sync(a,) }");
        FAIL("expected a syntax error");
    } catch (const SyntaxError& e) {
        CHECK(e.span.line == 1);
        CHECK(e.span.column > 1);
    }
}
