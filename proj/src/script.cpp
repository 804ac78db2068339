#include "qf2/script.hpp"

#include "json.hpp"

#include <chrono>
#include <map>
#include <sstream>

namespace qf2 {

namespace {

// ---------------------------------------------------------------- lexer ----

struct Tok {
    enum class Kind { Ident, Num, Punct, Newline, End } kind;
    std::string text;
    long num = 0;
    int line = 1, col = 1;
};

std::vector<Tok> lex(const std::string& text) {
    std::vector<Tok> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto push = [&](Tok::Kind k, std::string s, long n = 0) {
        out.push_back(Tok{k, std::move(s), n, line, col});
    };
    while (i < text.size()) {
        char c = text[i];
        if (c == '\n') {
            push(Tok::Kind::Newline, "\n");
            ++line;
            col = 1;
            ++i;
            continue;
        }
        if (c == ' ' || c == '\t' || c == '\r') {
            ++i;
            ++col;
            continue;
        }
        if (c == '/' && i + 1 < text.size() && text[i + 1] == '/') {
            while (i < text.size() && text[i] != '\n') ++i;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            long v = 0;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
                v = v * 10 + (text[j] - '0');
                ++j;
            }
            push(Tok::Kind::Num, text.substr(i, j - i), v);
            col += static_cast<int>(j - i);
            i = j;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) ||
                                       text[j] == '_'))
                ++j;
            push(Tok::Kind::Ident, text.substr(i, j - i));
            col += static_cast<int>(j - i);
            i = j;
            continue;
        }
        static const std::string punct = "()[]{}<>,;=+-*/^.#";
        if (punct.find(c) != std::string::npos) {
            push(Tok::Kind::Punct, std::string(1, c));
            ++i;
            ++col;
            continue;
        }
        throw script_error(std::string("unexpected character '") + c + "'", line, col);
    }
    push(Tok::Kind::End, "");
    return out;
}

// --------------------------------------------------------------- parser ----

struct Parser {
    std::vector<Tok> toks;
    std::size_t pos = 0;
    std::map<std::string, ExprType> types; // let-bound names

    const Tok& cur() const { return toks[pos]; }
    const Tok& peek(int n = 1) const {
        return toks[std::min(pos + static_cast<std::size_t>(n), toks.size() - 1)];
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw script_error(msg, cur().line, cur().col);
    }
    bool is_punct(const char* s) const {
        return cur().kind == Tok::Kind::Punct && cur().text == s;
    }
    bool is_ident(const char* s) const {
        return cur().kind == Tok::Kind::Ident && cur().text == s;
    }
    void expect_punct(const char* s) {
        if (!is_punct(s)) fail(std::string("expected '") + s + "'");
        ++pos;
    }
    long expect_num() {
        if (cur().kind != Tok::Kind::Num) fail("expected a number");
        return toks[pos++].num;
    }
    std::string expect_ident() {
        if (cur().kind != Tok::Kind::Ident) fail("expected an identifier");
        return toks[pos++].text;
    }

    NodePtr mk(Node::Kind k) {
        auto n = std::make_unique<Node>();
        n->kind = k;
        n->line = cur().line;
        n->col = cur().col;
        return n;
    }

    ExprType name_type(const std::string& name) {
        auto it = types.find(name);
        if (it == types.end()) fail("unbound name '" + name + "'");
        return it->second;
    }

    // elem := term {("+"|"-") term}
    NodePtr parse_elem() {
        NodePtr lhs = parse_term();
        while (is_punct("+") || is_punct("-")) {
            ++pos;
            auto n = mk(Node::Kind::Add);
            n->kids.push_back(std::move(lhs));
            n->kids.push_back(parse_term());
            lhs = std::move(n);
        }
        return lhs;
    }
    NodePtr parse_term() {
        NodePtr lhs = parse_pow();
        while (is_punct("*") || is_punct("/")) {
            bool div = cur().text == "/";
            ++pos;
            auto n = mk(div ? Node::Kind::Div : Node::Kind::Mul);
            n->kids.push_back(std::move(lhs));
            n->kids.push_back(parse_pow());
            lhs = std::move(n);
        }
        return lhs;
    }
    NodePtr parse_pow() {
        NodePtr base = parse_atom();
        if (is_punct("^")) {
            ++pos;
            auto n = mk(Node::Kind::Pow);
            n->num = expect_num();
            n->kids.push_back(std::move(base));
            return n;
        }
        return base;
    }
    NodePtr parse_atom() {
        if (cur().kind == Tok::Kind::Num) {
            auto n = mk(Node::Kind::Num);
            n->num = expect_num();
            return n;
        }
        if (is_punct("(")) {
            ++pos;
            NodePtr inner = parse_elem();
            expect_punct(")");
            return inner;
        }
        if (cur().kind == Tok::Kind::Ident) {
            std::string id = cur().text;
            if ((id == "sqrt" || id == "as") && peek().kind == Tok::Kind::Punct &&
                peek().text == "#") {
                auto n = mk(id == "sqrt" ? Node::Kind::SqrtGen : Node::Kind::AsGen);
                pos += 2; // ident, '#'
                n->num = expect_num();
                if (n->num < 1) fail("generator index must be >= 1");
                return n;
            }
            if (id == "t") {
                ++pos;
                return mk(Node::Kind::Var);
            }
            if (id == "g") {
                ++pos;
                return mk(Node::Kind::GfGen);
            }
            if (name_type(id) != ExprType::Elem)
                fail("name '" + id + "' is not an element");
            auto n = mk(Node::Kind::Name);
            n->name = id;
            ++pos;
            return n;
        }
        fail("expected an element");
    }

    // field := "GF(" int ")" ("(t)")? ("." ext)*
    NodePtr parse_field() {
        auto n = mk(Node::Kind::Field);
        ++pos; // GF
        expect_punct("(");
        n->num = expect_num();
        if (n->num < 2 || (n->num & (n->num - 1)) != 0)
            fail("GF order must be a power of two");
        expect_punct(")");
        if (is_punct("(")) {
            if (!(peek().kind == Tok::Kind::Ident && peek().text == "t"))
                fail("expected (t)");
            pos += 2;
            expect_punct(")");
            n->has_t = true;
        }
        while (is_punct(".")) {
            ++pos;
            std::string ext = expect_ident();
            bool insep;
            if (ext == "adj_sqrt") insep = true;
            else if (ext == "adj_as") insep = false;
            else fail("expected adj_sqrt or adj_as");
            expect_punct("(");
            n->kids.push_back(parse_elem());
            n->ext_insep.push_back(insep);
            expect_punct(")");
        }
        return n;
    }

    NodePtr parse_form() {
        if (is_ident("Q")) {
            auto n = mk(Node::Kind::FormBlock);
            ++pos;
            expect_punct("[");
            n->kids.push_back(parse_elem());
            expect_punct(",");
            n->kids.push_back(parse_elem());
            expect_punct("]");
            return n;
        }
        if (is_ident("perp")) {
            auto n = mk(Node::Kind::FormPerp);
            ++pos;
            expect_punct("(");
            n->kids.push_back(parse_form_expr());
            while (is_punct(",")) {
                ++pos;
                n->kids.push_back(parse_form_expr());
            }
            expect_punct(")");
            return n;
        }
        if (is_ident("scale")) {
            auto n = mk(Node::Kind::FormScale);
            ++pos;
            expect_punct("(");
            n->kids.push_back(parse_elem());
            expect_punct(",");
            n->kids.push_back(parse_form_expr());
            expect_punct(")");
            return n;
        }
        if (is_ident("pf")) {
            auto n = mk(Node::Kind::FormPfister);
            ++pos;
            expect_punct("<");
            expect_punct("<");
            n->kids.push_back(parse_elem());
            while (is_punct(",")) {
                ++pos;
                n->kids.push_back(parse_elem());
            }
            expect_punct(";");
            n->kids.push_back(parse_elem());
            expect_punct("]");
            expect_punct("]");
            return n;
        }
        if (is_ident("bil")) {
            auto n = mk(Node::Kind::FormBilinear);
            ++pos;
            expect_punct("<");
            n->kids.push_back(parse_elem());
            while (is_punct(",")) {
                ++pos;
                n->kids.push_back(parse_elem());
            }
            expect_punct(">");
            return n;
        }
        fail("expected a form");
    }

    // a form position also accepts a name bound to a form
    NodePtr parse_form_expr() {
        if (cur().kind == Tok::Kind::Ident && types.count(cur().text)) {
            ExprType ty = types[cur().text];
            if (ty == ExprType::Form || ty == ExprType::Bilinear) {
                auto n = mk(Node::Kind::Name);
                n->name = cur().text;
                ++pos;
                return n;
            }
        }
        return parse_form();
    }

    NodePtr parse_symbol() {
        auto n = mk(Node::Kind::Symbol);
        expect_punct("[");
        n->kids.push_back(parse_elem());
        expect_punct(",");
        n->kids.push_back(parse_elem());
        expect_punct(")");
        return n;
    }

    NodePtr parse_symbol_expr() {
        if (cur().kind == Tok::Kind::Ident && types.count(cur().text) &&
            types[cur().text] == ExprType::Symbol) {
            auto n = mk(Node::Kind::Name);
            n->name = cur().text;
            ++pos;
            return n;
        }
        return parse_symbol();
    }

    ExprType expr_type(const Node& n) {
        switch (n.kind) {
        case Node::Kind::Field: return ExprType::Field;
        case Node::Kind::FormBlock:
        case Node::Kind::FormPerp:
        case Node::Kind::FormScale:
        case Node::Kind::FormPfister: return ExprType::Form;
        case Node::Kind::FormBilinear: return ExprType::Bilinear;
        case Node::Kind::Symbol: return ExprType::Symbol;
        case Node::Kind::Name: return types.at(n.name);
        default: return ExprType::Elem;
        }
    }

    NodePtr parse_expr() {
        if (is_ident("GF")) return parse_field();
        if (is_ident("Q") || is_ident("perp") || is_ident("scale") || is_ident("pf") ||
            is_ident("bil"))
            return parse_form();
        if (is_punct("[")) return parse_symbol();
        return parse_elem();
    }

    void end_of_stmt() {
        if (cur().kind == Tok::Kind::Newline || is_punct(";")) {
            ++pos;
            return;
        }
        if (cur().kind == Tok::Kind::End) return;
        fail("unexpected trailing input");
    }

    Stmt parse_verify() {
        Stmt st;
        st.kind = Stmt::Kind::Cmd;
        st.name = "verify";
        st.line = cur().line;
        ++pos; // verify
        // statement id: idents and numbers joined by '-'
        std::ostringstream id;
        id << expect_ident();
        while (is_punct("-") && !(peek().kind == Tok::Kind::Punct && peek().text == "-")) {
            ++pos;
            if (cur().kind == Tok::Kind::Num) id << "-" << expect_num();
            else id << "-" << expect_ident();
        }
        st.statement_id = id.str();
        for (;;) {
            if (is_punct("-") && peek().kind == Tok::Kind::Punct && peek().text == "-") {
                pos += 2;
                std::string flag = expect_ident();
                long v = expect_num();
                if (flag == "trials") st.trials = static_cast<int>(v);
                else if (flag == "seed") st.seed = v;
                else fail("unknown verify flag --" + flag);
                continue;
            }
            break;
        }
        return st;
    }

    Script parse() {
        Script script;
        while (cur().kind != Tok::Kind::End) {
            if (cur().kind == Tok::Kind::Newline || is_punct(";")) {
                ++pos;
                continue;
            }
            if (is_ident("let")) {
                Stmt st;
                st.kind = Stmt::Kind::Let;
                st.line = cur().line;
                ++pos;
                st.name = expect_ident();
                if (st.name == "let" || st.name == "t" || st.name == "g")
                    fail("reserved name '" + st.name + "'");
                expect_punct("=");
                st.args.push_back(parse_expr());
                types[st.name] = expr_type(*st.args[0]);
                end_of_stmt();
                script.stmts.push_back(std::move(st));
                continue;
            }
            if (is_ident("verify")) {
                Stmt st = parse_verify();
                end_of_stmt();
                script.stmts.push_back(std::move(st));
                continue;
            }
            if (cur().kind != Tok::Kind::Ident) fail("expected a statement");
            std::string verb = cur().text;
            Stmt st;
            st.kind = Stmt::Kind::Cmd;
            st.name = verb;
            st.line = cur().line;
            ++pos;
            if (verb == "arf" || verb == "e2" || verb == "hyp" || verb == "iso" ||
                verb == "descend") {
                st.args.push_back(parse_form_expr());
                if (expr_type(*st.args[0]) != ExprType::Form)
                    fail(verb + " expects a quadratic form");
            } else if (verb == "transfer") {
                st.args.push_back(parse_form_expr());
            } else if (verb == "split" || verb == "inv" || verb == "frob") {
                st.args.push_back(parse_symbol_expr());
            } else if (verb == "eq") {
                // two forms or two symbols
                if (is_punct("[") || (cur().kind == Tok::Kind::Ident &&
                                      types.count(cur().text) &&
                                      types[cur().text] == ExprType::Symbol)) {
                    st.args.push_back(parse_symbol_expr());
                    expect_punct(",");
                    st.args.push_back(parse_symbol_expr());
                } else {
                    st.args.push_back(parse_form_expr());
                    expect_punct(",");
                    st.args.push_back(parse_form_expr());
                    if (expr_type(*st.args[0]) != ExprType::Form ||
                        expr_type(*st.args[1]) != ExprType::Form)
                        fail("eq expects two forms or two symbols");
                }
            } else {
                fail("unknown verb '" + verb + "'");
            }
            end_of_stmt();
            script.stmts.push_back(std::move(st));
        }
        return script;
    }
};

// -------------------------------------------------------------- printer ----

void print_node(const Node& n, std::ostream& os) {
    switch (n.kind) {
    case Node::Kind::Num: os << n.num; break;
    case Node::Kind::Var: os << "t"; break;
    case Node::Kind::GfGen: os << "g"; break;
    case Node::Kind::SqrtGen: os << "sqrt#" << n.num; break;
    case Node::Kind::AsGen: os << "as#" << n.num; break;
    case Node::Kind::Name: os << n.name; break;
    case Node::Kind::Add:
        print_node(*n.kids[0], os);
        os << " + ";
        print_node(*n.kids[1], os);
        break;
    case Node::Kind::Mul:
    case Node::Kind::Div: {
        auto wrap = [&](const Node& k) {
            bool paren = k.kind == Node::Kind::Add;
            if (paren) os << "(";
            print_node(k, os);
            if (paren) os << ")";
        };
        wrap(*n.kids[0]);
        os << (n.kind == Node::Kind::Mul ? "*" : "/");
        wrap(*n.kids[1]);
        break;
    }
    case Node::Kind::Pow: {
        bool paren = n.kids[0]->kind == Node::Kind::Add || n.kids[0]->kind == Node::Kind::Mul ||
                     n.kids[0]->kind == Node::Kind::Div;
        if (paren) os << "(";
        print_node(*n.kids[0], os);
        if (paren) os << ")";
        os << "^" << n.num;
        break;
    }
    case Node::Kind::Field:
        os << "GF(" << n.num << ")";
        if (n.has_t) os << "(t)";
        for (std::size_t i = 0; i < n.kids.size(); ++i) {
            os << (n.ext_insep[i] ? ".adj_sqrt(" : ".adj_as(");
            print_node(*n.kids[i], os);
            os << ")";
        }
        break;
    case Node::Kind::FormBlock:
        os << "Q[";
        print_node(*n.kids[0], os);
        os << ", ";
        print_node(*n.kids[1], os);
        os << "]";
        break;
    case Node::Kind::FormPerp:
        os << "perp(";
        for (std::size_t i = 0; i < n.kids.size(); ++i) {
            if (i) os << ", ";
            print_node(*n.kids[i], os);
        }
        os << ")";
        break;
    case Node::Kind::FormScale:
        os << "scale(";
        print_node(*n.kids[0], os);
        os << ", ";
        print_node(*n.kids[1], os);
        os << ")";
        break;
    case Node::Kind::FormPfister:
        os << "pf<<";
        for (std::size_t i = 0; i + 1 < n.kids.size(); ++i) {
            if (i) os << ", ";
            print_node(*n.kids[i], os);
        }
        os << "; ";
        print_node(*n.kids.back(), os);
        os << "]]";
        break;
    case Node::Kind::FormBilinear:
        os << "bil<";
        for (std::size_t i = 0; i < n.kids.size(); ++i) {
            if (i) os << ", ";
            print_node(*n.kids[i], os);
        }
        os << ">";
        break;
    case Node::Kind::Symbol:
        os << "[";
        print_node(*n.kids[0], os);
        os << ", ";
        print_node(*n.kids[1], os);
        os << ")";
        break;
    }
}

// ------------------------------------------------------------ evaluator ----

struct TypedElem {
    TowerPtr T;
    Elem e;
};

struct Value {
    // exactly one engaged, tagged by ExprType
    ExprType type = ExprType::Elem;
    TowerPtr field;
    TypedElem elem;
    QuadraticForm form{nullptr, {}};
    BilinearForm bilinear{nullptr, {}};
    QuaternionSymbol symbol{nullptr, {}, {}};
};

struct Executor {
    const ExecOptions& opts;
    std::map<std::string, Value> env;
    TowerPtr field; // current field for new expressions

    explicit Executor(const ExecOptions& o) : opts(o), field(Tower::rational(1)) {}

    Elem eval_elem(const Node& n, TowerPtr T) {
        const Tower& F = *T;
        switch (n.kind) {
        case Node::Kind::Num: return e_int(F, n.num);
        case Node::Kind::Var:
            if (!F.has_var()) throw script_error("field has no variable t", n.line, n.col);
            return e_var(F);
        case Node::Kind::GfGen:
            if (F.gf().degree() < 2)
                throw script_error("GF(2) has no extra generator g", n.line, n.col);
            return e_const(F, 2);
        case Node::Kind::SqrtGen:
        case Node::Kind::AsGen: {
            int idx = static_cast<int>(n.num) - 1;
            if (idx >= F.depth())
                throw script_error("generator index exceeds tower depth", n.line, n.col);
            bool insep = F.steps()[idx].kind == ExtStep::Kind::Inseparable;
            if (insep != (n.kind == Node::Kind::SqrtGen))
                throw script_error("generator kind does not match the tower step", n.line,
                                   n.col);
            return e_gen(F, idx);
        }
        case Node::Kind::Name: {
            const Value& v = env.at(n.name);
            if (v.elem.T->same_field(F)) return v.elem.e;
            if (T->extends(*v.elem.T)) return embed(*v.elem.T, F, v.elem.e);
            throw script_error("element '" + n.name + "' lives in an unrelated field", n.line,
                               n.col);
        }
        case Node::Kind::Add:
            return e_add(F, eval_elem(*n.kids[0], T), eval_elem(*n.kids[1], T));
        case Node::Kind::Mul:
            return e_mul(F, eval_elem(*n.kids[0], T), eval_elem(*n.kids[1], T));
        case Node::Kind::Div:
            return e_div(F, eval_elem(*n.kids[0], T), eval_elem(*n.kids[1], T));
        case Node::Kind::Pow: {
            Elem base = eval_elem(*n.kids[0], T);
            Elem acc = e_one(F);
            for (long i = 0; i < n.num; ++i) acc = e_mul(F, acc, base);
            return acc;
        }
        default: throw script_error("expected an element", n.line, n.col);
        }
    }

    TowerPtr eval_field(const Node& n) {
        int order = static_cast<int>(n.num);
        int k = 0;
        while ((1 << k) < order) ++k;
        TowerPtr T = n.has_t ? Tower::rational(k) : Tower::finite(k);
        for (std::size_t i = 0; i < n.kids.size(); ++i) {
            Elem gen = eval_elem(*n.kids[i], T);
            T = n.ext_insep[i] ? T->adjoin_sqrt(gen) : T->adjoin_artin_schreier(gen);
        }
        return T;
    }

    QuadraticForm eval_form(const Node& n, TowerPtr T) {
        switch (n.kind) {
        case Node::Kind::FormBlock:
            return make_form(T, {{eval_elem(*n.kids[0], T), eval_elem(*n.kids[1], T)}});
        case Node::Kind::FormPerp: {
            QuadraticForm acc{T, {}};
            for (const auto& k : n.kids) acc = orth_sum(acc, eval_form(*k, T));
            return acc;
        }
        case Node::Kind::FormScale:
            return scale_form(eval_elem(*n.kids[0], T), eval_form(*n.kids[1], T));
        case Node::Kind::FormPfister: {
            std::vector<Elem> slots;
            for (std::size_t i = 0; i + 1 < n.kids.size(); ++i)
                slots.push_back(eval_elem(*n.kids[i], T));
            return pfister(T, slots, eval_elem(*n.kids.back(), T));
        }
        case Node::Kind::Name: {
            const Value& v = env.at(n.name);
            if (v.type != ExprType::Form)
                throw script_error("'" + n.name + "' is not a quadratic form", n.line, n.col);
            return v.form;
        }
        default: throw script_error("expected a quadratic form", n.line, n.col);
        }
    }

    Value eval_expr(const Node& n) {
        Value v;
        switch (n.kind) {
        case Node::Kind::Field:
            v.type = ExprType::Field;
            v.field = eval_field(n);
            return v;
        case Node::Kind::FormBilinear: {
            v.type = ExprType::Bilinear;
            std::vector<Elem> diag;
            for (const auto& k : n.kids) diag.push_back(eval_elem(*k, field));
            v.bilinear = make_bilinear(field, std::move(diag));
            return v;
        }
        case Node::Kind::FormBlock:
        case Node::Kind::FormPerp:
        case Node::Kind::FormScale:
        case Node::Kind::FormPfister:
            v.type = ExprType::Form;
            v.form = eval_form(n, field);
            return v;
        case Node::Kind::Symbol:
            v.type = ExprType::Symbol;
            v.symbol = make_symbol(field, eval_elem(*n.kids[0], field),
                                   eval_elem(*n.kids[1], field));
            return v;
        case Node::Kind::Name: return env.at(n.name);
        default:
            v.type = ExprType::Elem;
            v.elem = TypedElem{field, eval_elem(n, field)};
            return v;
        }
    }
};

std::string tri_text(TriBool t) {
    switch (t) {
    case TriBool::Yes: return "yes";
    case TriBool::No: return "no";
    default: return "unknown";
    }
}

std::string bilinear_text(const TransferredBilinear& tb) {
    std::ostringstream os;
    os << "<";
    for (std::size_t i = 0; i < tb.diag.diag.size(); ++i) {
        if (i) os << ", ";
        os << e_str(*tb.diag.T, tb.diag.diag[i]);
    }
    os << ">";
    if (tb.metabolic_planes > 0) os << " + " << tb.metabolic_planes << " metabolic";
    return os.str();
}

} // namespace

Script parse_script(const std::string& text) {
    Parser p{lex(text)};
    return p.parse();
}

std::string print_script(const Script& s) {
    std::ostringstream os;
    for (const Stmt& st : s.stmts) {
        if (st.kind == Stmt::Kind::Let) {
            os << "let " << st.name << " = ";
            print_node(*st.args[0], os);
        } else if (st.name == "verify") {
            os << "verify " << st.statement_id;
            if (st.trials >= 0) os << " --trials " << st.trials;
            if (st.seed >= 0) os << " --seed " << st.seed;
        } else {
            os << st.name << " ";
            for (std::size_t i = 0; i < st.args.size(); ++i) {
                if (i) os << ", ";
                print_node(*st.args[i], os);
            }
        }
        os << "\n";
    }
    return os.str();
}

ExecResult execute(const Script& script, const ExecOptions& opts) {
    using nlohmann::ordered_json;
    Executor ex(opts);
    std::ostringstream human;
    ordered_json jout = ordered_json::array();
    int exit_code = 0;
    auto t0 = std::chrono::steady_clock::now();

    for (std::size_t ci = 0; ci < script.stmts.size(); ++ci) {
        const Stmt& st = script.stmts[ci];
        if (opts.timeout_ms >= 0 && ci > 0) {
            auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
            if (ms >= opts.timeout_ms)
                throw std::runtime_error("timeout exceeded before command " +
                                         std::to_string(ci + 1));
        }
        try {
            if (st.kind == Stmt::Kind::Let) {
                Value v = ex.eval_expr(*st.args[0]);
                if (v.type == ExprType::Field) ex.field = v.field;
                ex.env[st.name] = std::move(v);
                continue;
            }
            ordered_json j;
            j["cmd"] = st.name;
            std::string line;
            if (st.name == "arf") {
                QuadraticForm f = ex.eval_form(*st.args[0], ex.field);
                ArfClass a = arf(f);
                line = arf_trivial(a) ? "trivial"
                                      : "nontrivial (rep " + e_str(*a.T, a.rep) + ")";
            } else if (st.name == "e2") {
                QuadraticForm f = ex.eval_form(*st.args[0], ex.field);
                line = class_str(e2(f));
            } else if (st.name == "hyp") {
                QuadraticForm f = ex.eval_form(*st.args[0], ex.field);
                HypResult h = is_hyperbolic(f);
                line = h.kind == HypResult::Kind::Yes  ? "yes"
                       : h.kind == HypResult::Kind::No ? "no"
                                                       : "unknown: " + h.reason;
            } else if (st.name == "iso") {
                QuadraticForm f = ex.eval_form(*st.args[0], ex.field);
                IsotropyResult r = is_isotropic(f, opts.budget);
                if (r.kind == IsotropyResult::Kind::Isotropic) {
                    std::ostringstream os;
                    os << "isotropic (";
                    for (std::size_t i = 0; i < r.witness.size(); ++i) {
                        if (i) os << ", ";
                        os << e_str(*f.T, r.witness[i]);
                    }
                    os << ")";
                    line = os.str();
                } else if (r.kind == IsotropyResult::Kind::Anisotropic) {
                    line = "anisotropic (" + r.certificate + ")";
                } else {
                    line = "unknown: " + r.certificate;
                }
            } else if (st.name == "descend") {
                QuadraticForm f = ex.eval_form(*st.args[0], ex.field);
                DescentResult d = descend_form_search(f, opts.budget);
                line = d.found ? form_str(d.psi)
                               : "not found (candidates tried: " +
                                     std::to_string(d.candidates_tried) + ")";
            } else if (st.name == "transfer") {
                const Node& a = *st.args[0];
                bool bilin = a.kind == Node::Kind::FormBilinear ||
                             (a.kind == Node::Kind::Name &&
                              ex.env.at(a.name).type == ExprType::Bilinear);
                if (bilin) {
                    BilinearForm b = a.kind == Node::Kind::Name
                                         ? ex.env.at(a.name).bilinear
                                         : ex.eval_expr(a).bilinear;
                    line = bilinear_text(transfer_bilinear(make_transfer(b.T), b));
                } else {
                    QuadraticForm f = ex.eval_form(a, ex.field);
                    line = form_str(transfer_quadratic(make_transfer(f.T), f));
                }
            } else if (st.name == "split") {
                Value v = ex.eval_expr(*st.args[0]);
                SplitResult r = split_test(v.symbol);
                line = r == SplitResult::Split      ? "split"
                       : r == SplitResult::Nonsplit ? "nonsplit"
                                                    : "unknown";
            } else if (st.name == "inv") {
                Value v = ex.eval_expr(*st.args[0]);
                BrauerClass c = make_class(v.symbol.T, {v.symbol});
                std::ostringstream os;
                ordered_json tbl = ordered_json::object();
                os << "{";
                auto vec = invariant_vector(c);
                for (std::size_t i = 0; i < vec.size(); ++i) {
                    std::string pl = place_str(v.symbol.T->gf(), vec[i].first);
                    if (i) os << ", ";
                    os << pl << ": " << vec[i].second;
                    tbl[pl] = vec[i].second;
                }
                os << "}";
                line = os.str();
                j["invariants"] = tbl;
            } else if (st.name == "frob") {
                Value v = ex.eval_expr(*st.args[0]);
                TowerPtr base = base_tower(v.symbol.T);
                line = class_str(frobenius_map(make_class(v.symbol.T, {v.symbol}), base));
            } else if (st.name == "eq") {
                Value a = ex.eval_expr(*st.args[0]);
                Value b = ex.eval_expr(*st.args[1]);
                TriBool r = a.type == ExprType::Symbol
                                ? class_equal(make_class(a.symbol.T, {a.symbol}),
                                              make_class(b.symbol.T, {b.symbol}))
                                : equivalent(a.form, b.form);
                line = tri_text(r);
            } else if (st.name == "verify") {
                int trials = st.trials >= 0 ? st.trials : opts.trials;
                std::uint64_t seed =
                    st.seed >= 0 ? static_cast<std::uint64_t>(st.seed) : opts.seed;
                auto reps = run_suite(st.statement_id, trials, seed);
                int nv = 0, nr = 0, ni = 0;
                ordered_json jtrials = ordered_json::array();
                for (const TrialReport& rep : reps) {
                    if (rep.verdict == Verdict::Verified) ++nv;
                    else if (rep.verdict == Verdict::Refuted) ++nr;
                    else ++ni;
                    ordered_json jt;
                    jt["instance"] = rep.instance;
                    jt["verdict"] = verdict_str(rep.verdict);
                    jt["certificates"] = rep.certificates;
                    jt["millis"] = 0.0; // suppressed for reproducible reports
                    jtrials.push_back(std::move(jt));
                }
                std::ostringstream os;
                os << "verify " << st.statement_id << ": trials=" << trials
                   << " verified=" << nv << " refuted=" << nr << " inconclusive=" << ni;
                line = os.str();
                j = ordered_json();
                j["statement"] = st.statement_id;
                j["seed"] = seed;
                j["trials"] = std::move(jtrials);
                if (nr > 0) exit_code = 3;
                human << line << "\n";
                jout.push_back(std::move(j));
                continue;
            }
            j["result"] = line;
            human << line << "\n";
            jout.push_back(std::move(j));
        } catch (const std::exception& e) {
            std::string msg = "error (command " + std::to_string(ci + 1) + "): " + e.what();
            human << msg << "\n";
            ordered_json j;
            j["cmd"] = st.kind == Stmt::Kind::Let ? "let" : st.name;
            j["error"] = msg;
            jout.push_back(std::move(j));
            ExecResult res;
            res.exit_code = 2;
            res.output = opts.json ? jout.dump(2) + "\n" : human.str();
            return res;
        }
    }

    ExecResult res;
    res.exit_code = exit_code;
    res.output = opts.json ? jout.dump(2) + "\n" : human.str();
    return res;
}

ExecResult run_script(const std::string& text, const ExecOptions& opts) {
    try {
        Script s = parse_script(text);
        return execute(s, opts);
    } catch (const script_error& e) {
        ExecResult res;
        res.exit_code = 1;
        res.output = std::string("parse error: ") + e.what() + "\n";
        return res;
    } catch (const std::exception& e) {
        ExecResult res;
        res.exit_code = 2;
        res.output = std::string("error: ") + e.what() + "\n";
        return res;
    }
}

} // namespace qf2
