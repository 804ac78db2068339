#ifndef QF2_SCRIPT_HPP
#define QF2_SCRIPT_HPP

#include "qf2/theorems.hpp"

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace qf2 {

struct script_error : std::runtime_error {
    int line, col;
    script_error(const std::string& msg, int line_, int col_)
        : std::runtime_error(msg + " (line " + std::to_string(line_) + ", column " +
                             std::to_string(col_) + ")"),
          line(line_), col(col_) {}
};

/// Expression AST node of the shared grammar. One tagged type keeps the
/// parser and evaluator compact; `kind` decides which fields are used.
struct Node {
    enum class Kind {
        Num,      // num = literal value
        Var,      // t
        SqrtGen,  // sqrt#i, num = i (1-based)
        AsGen,    // as#i, num = i (1-based)
        GfGen,    // g, the multiplicative generator of GF(2^k), k > 1
        Name,     // name = bound identifier
        Add, Mul, Div,          // kids = {lhs, rhs}
        Pow,                    // kids = {base}, num = exponent
        Field,                  // num = GF order, has_t flag, kids = extension generators
        FormBlock,              // kids = {a, b}
        FormPerp,               // kids = summands
        FormScale,              // kids = {lambda, form}
        FormPfister,            // kids = {u_1, ..., u_{n-1}, v}
        FormBilinear,           // kids = diagonal entries
        Symbol                  // kids = {a, b}
    };
    Kind kind;
    long num = 0;
    bool has_t = false;
    std::vector<bool> ext_insep; // Field: step kinds, parallel to kids
    std::string name;
    std::vector<std::unique_ptr<Node>> kids;
    int line = 1, col = 1;
};
using NodePtr = std::unique_ptr<Node>;

/// Inferred expression type, fixed at parse time.
enum class ExprType { Field, Elem, Form, Bilinear, Symbol };

struct Stmt {
    enum class Kind { Let, Cmd } kind;
    std::string name; // Let: bound identifier; Cmd: the verb
    std::vector<NodePtr> args;
    // verify only:
    std::string statement_id;
    int trials = -1;           // -1: use the global default
    long long seed = -1;       // -1: use the global default
    int line = 1;
};

struct Script {
    std::vector<Stmt> stmts;
};

/// Parses and statically checks a script (names bound before use, argument
/// types per verb). Throws script_error on failure.
Script parse_script(const std::string& text);

/// Canonical printer; parse_script(print_script(s)) reproduces s.
std::string print_script(const Script& s);

struct ExecOptions {
    bool json = false;
    std::uint64_t seed = 0;
    int trials = 20;
    int budget = -1;      // degree bound forwarded to searches; -1: library default
    long timeout_ms = -1; // whole-script wall-clock guard; -1: none
};

struct ExecResult {
    int exit_code = 0; // 0 ok, 1 usage/parse, 2 library error, 3 refutation
    std::string output;
};

ExecResult execute(const Script& s, const ExecOptions& opts);

/// Convenience: parse + execute; parse failures become exit code 1 with the
/// message on the output.
ExecResult run_script(const std::string& text, const ExecOptions& opts);

} // namespace qf2

#endif
