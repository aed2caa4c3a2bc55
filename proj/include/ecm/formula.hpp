#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ecm {

struct Formula {
    enum class Op { Var, Not, And, Or };

    Op op = Op::Var;
    int var = 0;  // 1-based, Var only
    std::vector<Formula> kids;

    static Formula variable(int i);
    static Formula negation(Formula f);
    static Formula conj(std::vector<Formula> fs);
    static Formula disj(std::vector<Formula> fs);

    bool operator==(const Formula&) const = default;
};

// S-expression text: x3, (not F), (and F ...), (or F ...).
Formula parse_formula(std::string_view text);
std::string to_sexpr(const Formula& f);

// Compact form over the candidate-name alphabet: x3, <not,F>, <and,F,...>.
std::string to_name_expr(const Formula& f);
std::optional<Formula> from_name_expr(std::string_view s);

// A formula candidate name is "," + tag + "," + expression; the leading comma
// sorts before every other name byte.
std::string encode_formula_name(std::string_view tag, const Formula& f);
struct DecodedName {
    std::string tag;
    Formula formula;
    int z = 0;  // number of variables; the variable set is exactly 1..z
};
std::optional<DecodedName> decode_formula_name(std::string_view name);

int max_var(const Formula& f);
std::vector<int> variables(const Formula& f);  // sorted, unique

// Value with x_i = bits[i-1].
bool eval(const Formula& f, const std::vector<bool>& bits);

// Adds (x_i or not x_i) for every i <= z missing from f.
Formula pad(const Formula& f, int z);

enum class QbfShape { EA, AE, AEA };
const char* qbf_shape_name(QbfShape s);

// Brute force over equal-width blocks x_1.. in order; z = max_var(f) must be
// divisible by the number of blocks.
bool qbf_eval(const Formula& f, QbfShape shape);
bool qbf_eval(const Formula& f, QbfShape shape, int z);

}  // namespace ecm
