#include "T2Parser.h"

#include <cctype>
#include <set>

#include "../lia/Errors.h"

namespace seglex {
namespace {

enum class Tok : uint8_t { Ident, Number, Punct, End };

struct Token {
    Tok kind;
    std::string text;
    int line;
    int col;
};

bool identStart(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

bool identChar(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$' || c == '.';
}

std::vector<Token> lex(const std::string& s) {
    std::vector<Token> out;
    int line = 1, col = 1;
    size_t i = 0;
    auto step = [&] {
        if (s[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++i;
    };
    while (i < s.size()) {
        char c = s[i];
        if (c == '/' && i + 1 < s.size() && s[i + 1] == '/') {
            while (i < s.size() && s[i] != '\n') step();
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            step();
            continue;
        }
        int tl = line, tc = col;
        if (identStart(c)) {
            std::string text;
            while (i < s.size() && identChar(s[i])) {
                text += s[i];
                step();
            }
            out.push_back({Tok::Ident, std::move(text), tl, tc});
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string text;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
                text += s[i];
                step();
            }
            out.push_back({Tok::Number, std::move(text), tl, tc});
            continue;
        }
        static const char* two[] = {":=", "&&", "||", "==", "!=", "<=", ">="};
        std::string pair = s.substr(i, 2);
        bool matched = false;
        for (const char* t : two) {
            if (pair == t) {
                out.push_back({Tok::Punct, pair, tl, tc});
                step();
                step();
                matched = true;
                break;
            }
        }
        if (matched) continue;
        if (std::string(":;()?+-*<>=!").find(c) != std::string::npos) {
            out.push_back({Tok::Punct, std::string(1, c), tl, tc});
            step();
            continue;
        }
        throw ParseError("unexpected character '" + std::string(1, c) + "'", line, col);
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

std::string lowered(const std::string& s) {
    std::string r = s;
    for (char& c : r) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return r;
}

bool isReserved(const std::string& s) {
    std::string l = lowered(s);
    return l == "start" || l == "from" || l == "to" || l == "assume";
}

struct Parser {
    std::vector<Token> toks;
    size_t pos = 0;
    TransitionSystem sys;
    std::map<std::string, uint32_t> varIds;
    std::map<std::string, uint32_t> locIds;
    int splitCounter = 0;

    const Token& peek() const { return toks[pos]; }

    [[noreturn]] void fail(const std::string& msg) const {
        const Token& t = peek();
        std::string got = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
        throw ParseError(msg + ", got " + got, t.line, t.col);
    }

    bool atKeyword(const char* kw) const {
        return peek().kind == Tok::Ident && lowered(peek().text) == kw;
    }

    void expectKeyword(const char* kw) {
        if (!atKeyword(kw)) fail(std::string("expected ") + kw);
        ++pos;
    }

    void expectPunct(const char* p) {
        if (peek().kind != Tok::Punct || peek().text != p)
            fail(std::string("expected '") + p + "'");
        ++pos;
    }

    bool acceptPunct(const char* p) {
        if (peek().kind == Tok::Punct && peek().text == p) {
            ++pos;
            return true;
        }
        return false;
    }

    uint32_t internLoc(const std::string& name) {
        auto it = locIds.find(name);
        if (it != locIds.end()) return it->second;
        uint32_t id = static_cast<uint32_t>(sys.locNames.size());
        sys.locNames.push_back(name);
        locIds.emplace(name, id);
        return id;
    }

    uint32_t parseLocRef() {
        if (peek().kind != Tok::Ident && peek().kind != Tok::Number)
            fail("expected a location name");
        if (peek().kind == Tok::Ident && isReserved(peek().text))
            fail("expected a location name");
        return internLoc(toks[pos++].text);
    }

    uint32_t internVar() {
        if (peek().kind != Tok::Ident) fail("expected a variable name");
        if (isReserved(peek().text)) fail("'" + peek().text + "' is a reserved word");
        const std::string& name = peek().text;
        ++pos;
        auto it = varIds.find(name);
        if (it != varIds.end()) return it->second;
        uint32_t id = static_cast<uint32_t>(sys.varNames.size());
        sys.varNames.push_back(name);
        varIds.emplace(name, id);
        return id;
    }

    // terms: addExpr := mulExpr {(+|-) mulExpr}; mulExpr := unary {* unary};
    // unary := - unary | atom; atom := number | var | ( addExpr )
    static TermPtr negTerm(TermPtr t) {
        if (t->kind == TermKind::Const) return tConst(-t->value);
        return tNeg(std::move(t));
    }

    TermPtr parseAtomTerm() {
        if (peek().kind == Tok::Number) return tConst(Int(toks[pos++].text));
        if (peek().kind == Tok::Ident) return tVar(preVar(internVar()));
        if (acceptPunct("(")) {
            TermPtr t = parseTerm();
            expectPunct(")");
            return t;
        }
        fail("expected a term");
    }

    TermPtr parseUnaryTerm() {
        if (acceptPunct("-")) return negTerm(parseUnaryTerm());
        return parseAtomTerm();
    }

    TermPtr parseMulTerm() {
        std::vector<TermPtr> factors{parseUnaryTerm()};
        while (acceptPunct("*")) factors.push_back(parseUnaryTerm());
        return tMul(std::move(factors));
    }

    TermPtr parseTerm() {
        std::vector<TermPtr> args{parseMulTerm()};
        while (true) {
            if (acceptPunct("+"))
                args.push_back(parseMulTerm());
            else if (acceptPunct("-"))
                args.push_back(negTerm(parseMulTerm()));
            else
                break;
        }
        return tAdd(std::move(args));
    }

    // formulas: or := and {|| and}; and := not {&& not};
    // not := ! not | ( or ) | cmp   (the paren case backtracks to cmp,
    // since a parenthesized term looks the same from the left)
    FormulaPtr parseCmp() {
        TermPtr lhs = parseTerm();
        if (peek().kind != Tok::Punct) fail("expected a comparison");
        const std::string& op = peek().text;
        FormulaPtr (*mk)(TermPtr, TermPtr) = nullptr;
        if (op == "==" || op == "=")
            mk = fEq;
        else if (op == "!=")
            mk = fNe;
        else if (op == ">=")
            mk = fGe;
        else if (op == "<=")
            mk = fLe;
        else if (op == ">")
            mk = fGt;
        else if (op == "<")
            mk = fLt;
        else
            fail("expected a comparison");
        ++pos;
        return mk(std::move(lhs), parseTerm());
    }

    FormulaPtr parseNotExpr() {
        if (acceptPunct("!")) return fNot(parseNotExpr());
        if (peek().kind == Tok::Punct && peek().text == "(") {
            size_t save = pos;
            ++pos;
            try {
                FormulaPtr f = parseFormula();
                expectPunct(")");
                return f;
            } catch (const ParseError&) {
                pos = save;
            }
        }
        return parseCmp();
    }

    FormulaPtr parseAndExpr() {
        std::vector<FormulaPtr> args{parseNotExpr()};
        while (acceptPunct("&&")) args.push_back(parseNotExpr());
        return fAnd(std::move(args));
    }

    FormulaPtr parseFormula() {
        std::vector<FormulaPtr> args{parseAndExpr()};
        while (acceptPunct("||")) args.push_back(parseAndExpr());
        return fOr(std::move(args));
    }

    // rule body accumulation: guard conjuncts and the substitution
    // environment mapping each assigned variable to its value so far
    std::vector<FormulaPtr> guardConjs;
    std::map<VarId, TermPtr> env;
    std::set<uint32_t> havocd;

    void flushRule(uint32_t from, uint32_t to) {
        Rule r;
        r.from = from;
        r.to = to;
        r.guard = fAnd(guardConjs);
        for (auto& [v, t] : env) r.updates.emplace(v.index, t);
        for (uint32_t v : havocd) r.updates.emplace(v, std::nullopt);
        sys.rules.push_back(std::move(r));
        guardConjs.clear();
        env.clear();
        havocd.clear();
    }

    // reading a havocked variable forces a rule split: the havoc becomes
    // observable state at a fresh intermediate location
    uint32_t splitIfHavocRead(uint32_t cur, const std::set<VarId>& reads) {
        bool needsSplit = false;
        for (VarId v : reads)
            if (havocd.count(v.index)) needsSplit = true;
        if (!needsSplit) return cur;
        std::string name;
        do {
            name = "_s" + std::to_string(splitCounter++);
        } while (locIds.count(name));
        uint32_t mid = internLoc(name);
        flushRule(cur, mid);
        return mid;
    }

    void parseRule() {
        expectKeyword("from");
        expectPunct(":");
        uint32_t cur = parseLocRef();
        expectPunct(";");
        while (!atKeyword("to")) {
            if (atKeyword("assume")) {
                ++pos;
                expectPunct("(");
                FormulaPtr f = parseFormula();
                expectPunct(")");
                expectPunct(";");
                std::set<VarId> reads;
                collectFormulaVars(f, reads);
                cur = splitIfHavocRead(cur, reads);
                guardConjs.push_back(substituteFormula(f, env));
            } else if (peek().kind == Tok::Ident && !isReserved(peek().text)) {
                uint32_t v = internVar();
                expectPunct(":=");
                if (acceptPunct("?")) {
                    expectPunct(";");
                    env.erase(preVar(v));
                    havocd.insert(v);
                } else {
                    TermPtr t = parseTerm();
                    expectPunct(";");
                    std::set<VarId> reads;
                    collectTermVars(t, reads);
                    cur = splitIfHavocRead(cur, reads);
                    env[preVar(v)] = substituteTerm(t, env);
                    havocd.erase(v);
                }
            } else {
                fail("expected a command or TO");
            }
        }
        ++pos;  // TO
        expectPunct(":");
        uint32_t to = parseLocRef();
        expectPunct(";");
        flushRule(cur, to);
    }

    void parseProgram() {
        if (!atKeyword("start"))
            throw UndeclaredLocation("no START location declared");
        ++pos;
        expectPunct(":");
        sys.start = parseLocRef();
        expectPunct(";");
        while (peek().kind != Tok::End) parseRule();
    }
};

} // namespace

TransitionSystem parseT2(const std::string& text) {
    Parser p;
    p.toks = lex(text);
    p.parseProgram();
    return std::move(p.sys);
}

} // namespace seglex
