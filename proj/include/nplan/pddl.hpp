#pragma once

// PDDL frontend for the STRIPS subset: :strips and :typing only, positive
// preconditions, unconditional add/delete effects. Everything outside the
// subset is rejected with an error naming the construct.
//
// Accepted grammar (case-insensitive, ';' comments):
//   domain  := (define (domain NAME)
//                [(:requirements REQ*)] [(:types TYPED-NAMES)]
//                [(:predicates (NAME TYPED-VARS)*)]
//                (:action NAME :parameters (TYPED-VARS)
//                   [:precondition CONJ] [:effect EFF])*)
//   problem := (define (problem NAME) (:domain NAME)
//                [(:objects TYPED-NAMES)] (:init ATOM*) (:goal CONJ))
//   CONJ    := ATOM | (and ATOM*)
//   EFF     := ATOM | (not ATOM) | (and (ATOM | (not ATOM))*)

#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace nplan {

struct SourcePos {
    int line = 0;
    int col = 0;
};

class ParseError : public std::runtime_error {
public:
    ParseError(SourcePos pos, const std::string& msg)
        : std::runtime_error("parse error at " + std::to_string(pos.line) +
                             ":" + std::to_string(pos.col) + ": " + msg),
          pos(pos) {}
    SourcePos pos;
};

class UnsupportedFeature : public std::runtime_error {
public:
    UnsupportedFeature(SourcePos pos, const std::string& feature)
        : std::runtime_error("unsupported PDDL feature at " +
                             std::to_string(pos.line) + ":" +
                             std::to_string(pos.col) + ": " + feature),
          pos(pos), feature(feature) {}
    SourcePos pos;
    std::string feature;
};

// ---------------------------------------------------------------------------
// s-expressions

struct Sexpr {
    // leaf symbol if str non-empty mode; otherwise a list
    std::string atom;
    std::vector<Sexpr> list;
    bool is_atom = false;
    SourcePos pos;

    const std::string& head() const {
        static const std::string empty;
        if (is_atom || list.empty() || !list[0].is_atom) return empty;
        return list[0].atom;
    }
};

namespace detail {

struct Lexer {
    const std::string& text;
    std::size_t i = 0;
    int line = 1, col = 1;

    explicit Lexer(const std::string& t) : text(t) {}

    void advance() {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++i;
    }

    void skip_ws() {
        while (i < text.size()) {
            const char c = text[i];
            if (c == ';') {
                while (i < text.size() && text[i] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    bool eof() {
        skip_ws();
        return i >= text.size();
    }

    SourcePos pos() const { return {line, col}; }
};

inline Sexpr parse_sexpr(Lexer& lx) {
    lx.skip_ws();
    if (lx.i >= lx.text.size())
        throw ParseError(lx.pos(), "unexpected end of input");
    Sexpr node;
    node.pos = lx.pos();
    const char c = lx.text[lx.i];
    if (c == '(') {
        lx.advance();
        for (;;) {
            lx.skip_ws();
            if (lx.i >= lx.text.size())
                throw ParseError(lx.pos(), "unclosed '('");
            if (lx.text[lx.i] == ')') {
                lx.advance();
                return node;
            }
            node.list.push_back(parse_sexpr(lx));
        }
    }
    if (c == ')') throw ParseError(lx.pos(), "unexpected ')'");
    node.is_atom = true;
    while (lx.i < lx.text.size()) {
        const char d = lx.text[lx.i];
        if (d == '(' || d == ')' || d == ';' ||
            std::isspace(static_cast<unsigned char>(d)))
            break;
        node.atom.push_back(
            static_cast<char>(std::tolower(static_cast<unsigned char>(d))));
        lx.advance();
    }
    return node;
}

} // namespace detail

// ---------------------------------------------------------------------------
// ASTs

struct TypedName {
    std::string name;
    std::string type; // "object" when untyped
};

struct PredicateDef {
    std::string name;
    std::vector<TypedName> params;
};

struct Literal {
    std::string pred;
    std::vector<std::string> args; // ?variables in schemas, objects in facts
    SourcePos pos;
};

struct ActionSchema {
    std::string name;
    std::vector<TypedName> params;
    std::vector<Literal> pre;
    std::vector<Literal> add;
    std::vector<Literal> del;
};

struct DomainAst {
    std::string name;
    // child -> parent pairs; every chain roots at "object"
    std::vector<std::pair<std::string, std::string>> types;
    std::vector<PredicateDef> predicates;
    std::vector<ActionSchema> schemas;

    const PredicateDef* find_predicate(const std::string& n) const {
        for (const auto& p : predicates)
            if (p.name == n) return &p;
        return nullptr;
    }
};

struct ProblemAst {
    std::string name;
    std::string domain_name;
    std::vector<TypedName> objects;
    std::vector<Literal> init;
    std::vector<Literal> goal;
    std::vector<std::string> warnings;
};

namespace detail {

inline void expect_list(const Sexpr& s, const char* what) {
    if (s.is_atom)
        throw ParseError(s.pos, std::string("expected a list for ") + what);
}

inline const std::string& expect_symbol(const Sexpr& s, const char* what) {
    if (!s.is_atom)
        throw ParseError(s.pos, std::string("expected a symbol for ") + what);
    return s.atom;
}

// "a b - t c - u d" -> [(a,t),(b,t),(c,u),(d,object)]
inline std::vector<TypedName> parse_typed_names(
    const std::vector<Sexpr>& items, std::size_t from, std::size_t to) {
    std::vector<TypedName> out;
    std::vector<std::string> pending;
    for (std::size_t i = from; i < to; ++i) {
        const std::string& sym = expect_symbol(items[i], "name");
        if (sym == "-") {
            if (i + 1 >= to)
                throw ParseError(items[i].pos, "missing type after '-'");
            const Sexpr& ty = items[i + 1];
            if (!ty.is_atom && ty.head() == "either")
                throw UnsupportedFeature(ty.pos, "either types");
            const std::string& tname = expect_symbol(ty, "type");
            if (pending.empty())
                throw ParseError(items[i].pos, "'-' with no names before it");
            for (auto& n : pending) out.push_back({n, tname});
            pending.clear();
            ++i;
        } else {
            pending.push_back(sym);
        }
    }
    for (auto& n : pending) out.push_back({n, "object"});
    return out;
}

inline Literal parse_atom_expr(const Sexpr& s) {
    expect_list(s, "atom");
    if (s.list.empty()) throw ParseError(s.pos, "empty atom");
    Literal lit;
    lit.pos = s.pos;
    lit.pred = expect_symbol(s.list[0], "predicate name");
    if (lit.pred == "=") throw UnsupportedFeature(s.pos, ":equality");
    for (std::size_t i = 1; i < s.list.size(); ++i)
        lit.args.push_back(expect_symbol(s.list[i], "atom argument"));
    return lit;
}

inline void reject_condition_operator(const Sexpr& s) {
    const std::string& h = s.head();
    if (h == "when") throw UnsupportedFeature(s.pos, ":conditional-effects");
    if (h == "or" || h == "imply" || h == "exists" || h == "forall")
        throw UnsupportedFeature(s.pos, h == "or" || h == "imply"
                                            ? ":disjunctive-preconditions"
                                            : ":quantified-preconditions");
    if (h == "increase" || h == "decrease" || h == "assign")
        throw UnsupportedFeature(s.pos, ":action-costs");
}

// Positive conjunction: atom or (and atom*).
inline std::vector<Literal> parse_conjunction(const Sexpr& s,
                                              bool allow_empty) {
    std::vector<Literal> out;
    expect_list(s, "condition");
    reject_condition_operator(s);
    if (s.head() == "not")
        throw UnsupportedFeature(s.pos, "negative preconditions");
    if (s.head() == "and") {
        for (std::size_t i = 1; i < s.list.size(); ++i) {
            const Sexpr& c = s.list[i];
            reject_condition_operator(c);
            if (c.head() == "not")
                throw UnsupportedFeature(c.pos, "negative preconditions");
            out.push_back(parse_atom_expr(c));
        }
    } else if (!s.list.empty()) {
        out.push_back(parse_atom_expr(s));
    }
    if (out.empty() && !allow_empty)
        throw ParseError(s.pos, "empty condition");
    return out;
}

inline void parse_effect(const Sexpr& s, std::vector<Literal>& add,
                         std::vector<Literal>& del) {
    expect_list(s, "effect");
    reject_condition_operator(s);
    if (s.head() == "and") {
        for (std::size_t i = 1; i < s.list.size(); ++i)
            parse_effect(s.list[i], add, del);
        return;
    }
    if (s.head() == "not") {
        if (s.list.size() != 2)
            throw ParseError(s.pos, "(not ...) takes one atom");
        del.push_back(parse_atom_expr(s.list[1]));
        return;
    }
    add.push_back(parse_atom_expr(s));
}

} // namespace detail

// ---------------------------------------------------------------------------
// domain

inline DomainAst parse_domain(const std::string& text) {
    detail::Lexer lx(text);
    Sexpr top = detail::parse_sexpr(lx);
    if (top.head() != "define" || top.list.size() < 2 ||
        top.list[1].head() != "domain" || top.list[1].list.size() != 2)
        throw ParseError(top.pos, "expected (define (domain NAME) ...)");

    DomainAst dom;
    dom.name = detail::expect_symbol(top.list[1].list[1], "domain name");

    std::set<std::string> known_types{"object"};

    for (std::size_t i = 2; i < top.list.size(); ++i) {
        const Sexpr& sec = top.list[i];
        const std::string& h = sec.head();
        if (h == ":requirements") {
            for (std::size_t j = 1; j < sec.list.size(); ++j) {
                const std::string& req =
                    detail::expect_symbol(sec.list[j], "requirement");
                if (req != ":strips" && req != ":typing")
                    throw UnsupportedFeature(sec.list[j].pos, req);
            }
        } else if (h == ":types") {
            auto typed = detail::parse_typed_names(sec.list, 1, sec.list.size());
            for (auto& t : typed) {
                dom.types.emplace_back(t.name, t.type);
                known_types.insert(t.name);
            }
        } else if (h == ":predicates") {
            for (std::size_t j = 1; j < sec.list.size(); ++j) {
                const Sexpr& p = sec.list[j];
                detail::expect_list(p, "predicate declaration");
                if (p.list.empty())
                    throw ParseError(p.pos, "empty predicate declaration");
                PredicateDef def;
                def.name = detail::expect_symbol(p.list[0], "predicate name");
                if (dom.find_predicate(def.name))
                    throw ParseError(p.pos, "duplicate predicate " + def.name);
                def.params = detail::parse_typed_names(p.list, 1, p.list.size());
                dom.predicates.push_back(std::move(def));
            }
        } else if (h == ":action") {
            if (sec.list.size() < 2)
                throw ParseError(sec.pos, "action without a name");
            ActionSchema as;
            as.name = detail::expect_symbol(sec.list[1], "action name");
            for (std::size_t j = 2; j + 1 < sec.list.size(); j += 2) {
                const std::string& key =
                    detail::expect_symbol(sec.list[j], "action keyword");
                const Sexpr& val = sec.list[j + 1];
                if (key == ":parameters") {
                    detail::expect_list(val, ":parameters");
                    as.params =
                        detail::parse_typed_names(val.list, 0, val.list.size());
                } else if (key == ":precondition") {
                    as.pre = detail::parse_conjunction(val, true);
                } else if (key == ":effect") {
                    detail::parse_effect(val, as.add, as.del);
                } else {
                    throw UnsupportedFeature(sec.list[j].pos, key);
                }
            }
            for (auto& sch : dom.schemas)
                if (sch.name == as.name)
                    throw ParseError(sec.pos, "duplicate action " + as.name);
            dom.schemas.push_back(std::move(as));
        } else if (h == ":constants") {
            throw UnsupportedFeature(sec.pos, ":constants");
        } else if (h == ":functions") {
            throw UnsupportedFeature(sec.pos, ":action-costs");
        } else {
            throw UnsupportedFeature(sec.pos, h.empty() ? "malformed section"
                                                        : h);
        }
    }

    // type graph must be a forest rooted at object
    {
        std::map<std::string, std::string> parent;
        for (auto& [child, par] : dom.types) {
            if (parent.count(child) && parent[child] != par)
                throw ParseError({0, 0}, "type " + child +
                                             " declared with two parents");
            parent[child] = par;
        }
        for (auto& [child, par] : dom.types) {
            std::string cur = par;
            std::set<std::string> seen{child};
            while (cur != "object") {
                if (seen.count(cur))
                    throw ParseError({0, 0}, "type cycle through " + cur);
                seen.insert(cur);
                auto it = parent.find(cur);
                if (it == parent.end())
                    throw ParseError({0, 0}, "undeclared type " + cur);
                cur = it->second;
            }
        }
    }

    // arity consistency + parameter use
    for (const auto& as : dom.schemas) {
        std::set<std::string> declared;
        for (const auto& p : as.params) {
            if (p.name.empty() || p.name[0] != '?')
                throw ParseError({0, 0}, "parameter " + p.name + " of " +
                                             as.name + " must start with '?'");
            if (!known_types.count(p.type))
                throw ParseError({0, 0}, "undeclared type " + p.type);
            declared.insert(p.name);
        }
        auto check = [&](const std::vector<Literal>& lits) {
            for (const auto& lit : lits) {
                const PredicateDef* def = dom.find_predicate(lit.pred);
                if (!def)
                    throw ParseError(lit.pos,
                                     "undeclared predicate " + lit.pred);
                if (def->params.size() != lit.args.size())
                    throw ParseError(lit.pos, "predicate " + lit.pred +
                                                  " used with wrong arity");
                for (const auto& a : lit.args) {
                    if (a.empty() || a[0] != '?')
                        throw UnsupportedFeature(lit.pos, ":constants");
                    if (!declared.count(a))
                        throw ParseError(lit.pos, "undeclared parameter " + a +
                                                      " in " + as.name);
                }
            }
        };
        check(as.pre);
        check(as.add);
        check(as.del);
    }
    return dom;
}

// ---------------------------------------------------------------------------
// problem

inline ProblemAst parse_problem(const std::string& text, const DomainAst& dom) {
    detail::Lexer lx(text);
    Sexpr top = detail::parse_sexpr(lx);
    if (top.head() != "define" || top.list.size() < 2 ||
        top.list[1].head() != "problem" || top.list[1].list.size() != 2)
        throw ParseError(top.pos, "expected (define (problem NAME) ...)");

    ProblemAst prob;
    prob.name = detail::expect_symbol(top.list[1].list[1], "problem name");

    std::set<std::string> known_types{"object"};
    for (auto& [child, par] : dom.types) {
        known_types.insert(child);
        known_types.insert(par);
    }

    bool saw_goal = false;
    for (std::size_t i = 2; i < top.list.size(); ++i) {
        const Sexpr& sec = top.list[i];
        const std::string& h = sec.head();
        if (h == ":domain") {
            if (sec.list.size() != 2)
                throw ParseError(sec.pos, "malformed (:domain NAME)");
            prob.domain_name =
                detail::expect_symbol(sec.list[1], "domain name");
            if (prob.domain_name != dom.name)
                throw ParseError(sec.pos, "problem references domain '" +
                                              prob.domain_name +
                                              "' but got '" + dom.name + "'");
        } else if (h == ":objects") {
            prob.objects =
                detail::parse_typed_names(sec.list, 1, sec.list.size());
            for (auto& o : prob.objects)
                if (!known_types.count(o.type))
                    throw ParseError(sec.pos,
                                     "undeclared type " + o.type +
                                         " for object " + o.name);
        } else if (h == ":init") {
            for (std::size_t j = 1; j < sec.list.size(); ++j) {
                const Sexpr& f = sec.list[j];
                if (f.head() == "not")
                    throw UnsupportedFeature(f.pos, "negative init literals");
                if (f.head() == "=")
                    throw UnsupportedFeature(f.pos, ":action-costs");
                prob.init.push_back(detail::parse_atom_expr(f));
            }
        } else if (h == ":goal") {
            if (sec.list.size() != 2)
                throw ParseError(sec.pos, "malformed (:goal ...)");
            prob.goal = detail::parse_conjunction(sec.list[1], true);
            saw_goal = true;
            if (prob.goal.empty())
                prob.warnings.push_back(
                    "empty goal conjunction: every state is a goal state");
        } else if (h == ":metric") {
            throw UnsupportedFeature(sec.pos, ":action-costs");
        } else {
            throw UnsupportedFeature(sec.pos, h.empty() ? "malformed section"
                                                        : h);
        }
    }
    if (!saw_goal) throw ParseError(top.pos, "problem has no (:goal ...)");

    // resolve ground literals against the domain
    std::set<std::string> object_names;
    for (auto& o : prob.objects) {
        if (!object_names.insert(o.name).second)
            throw ParseError({0, 0}, "duplicate object " + o.name);
    }
    auto resolve = [&](const std::vector<Literal>& lits, const char* where) {
        for (const auto& lit : lits) {
            const PredicateDef* def = dom.find_predicate(lit.pred);
            if (!def)
                throw ParseError(lit.pos, std::string(where) +
                                              ": undeclared predicate " +
                                              lit.pred);
            if (def->params.size() != lit.args.size())
                throw ParseError(lit.pos, std::string(where) +
                                              ": wrong arity for " + lit.pred);
            for (const auto& a : lit.args)
                if (!object_names.count(a))
                    throw ParseError(lit.pos, std::string(where) +
                                                  ": unknown object " + a);
        }
    };
    resolve(prob.init, "init");
    resolve(prob.goal, "goal");
    return prob;
}

} // namespace nplan
