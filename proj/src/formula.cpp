#include "ecm/formula.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "ecm/error.hpp"

namespace ecm {

Formula Formula::variable(int i) {
    Formula f;
    f.var = i;
    return f;
}

Formula Formula::negation(Formula g) {
    Formula f;
    f.op = Op::Not;
    f.kids.push_back(std::move(g));
    return f;
}

Formula Formula::conj(std::vector<Formula> fs) {
    Formula f;
    f.op = Op::And;
    f.kids = std::move(fs);
    return f;
}

Formula Formula::disj(std::vector<Formula> fs) {
    Formula f;
    f.op = Op::Or;
    f.kids = std::move(fs);
    return f;
}

namespace {

class SexprParser {
public:
    explicit SexprParser(std::string_view s) : s_(s) {}

    Formula parse_all() {
        Formula f = parse();
        skip();
        if (pos_ != s_.size()) error("trailing input");
        return f;
    }

private:
    [[noreturn]] void error(const std::string& what) {
        fail(ErrorKind::Parse, "formula: " + what + " at offset " + std::to_string(pos_));
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    std::string word() {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) error("expected a word");
        return std::string(s_.substr(start, pos_ - start));
    }

    Formula parse() {
        skip();
        if (pos_ >= s_.size()) error("unexpected end");
        if (s_[pos_] != '(') return var(word());
        ++pos_;
        std::string op = word();
        std::vector<Formula> kids;
        while (true) {
            skip();
            if (pos_ >= s_.size()) error("unclosed parenthesis");
            if (s_[pos_] == ')') { ++pos_; break; }
            kids.push_back(parse());
        }
        if (op == "not") {
            if (kids.size() != 1) error("not takes one argument");
            return Formula::negation(std::move(kids[0]));
        }
        if (kids.empty()) error(op + " needs arguments");
        if (op == "and") return Formula::conj(std::move(kids));
        if (op == "or") return Formula::disj(std::move(kids));
        error("unknown connective '" + op + "'");
    }

    Formula var(const std::string& w) {
        if (w.size() < 2 || w[0] != 'x' || w[1] == '0') error("bad variable '" + w + "'");
        for (std::size_t i = 1; i < w.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(w[i]))) error("bad variable '" + w + "'");
        if (w.size() > 7) error("variable index too large");
        return Formula::variable(std::stoi(w.substr(1)));
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

const char* op_word(Formula::Op op) {
    switch (op) {
    case Formula::Op::Not: return "not";
    case Formula::Op::And: return "and";
    case Formula::Op::Or: return "or";
    default: return "";
    }
}

// Strict recursive reader for the name form; nullopt on any deviation.
struct NameReader {
    std::string_view s;
    std::size_t pos = 0;

    std::optional<Formula> read() {
        if (pos >= s.size()) return std::nullopt;
        if (s[pos] == 'x') {
            std::size_t start = ++pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            std::size_t len = pos - start;
            if (len == 0 || len > 6 || s[start] == '0') return std::nullopt;
            return Formula::variable(std::stoi(std::string(s.substr(start, len))));
        }
        if (s[pos] != '<') return std::nullopt;
        ++pos;
        Formula::Op op;
        if (s.substr(pos, 4) == "not,") op = Formula::Op::Not, pos += 4;
        else if (s.substr(pos, 4) == "and,") op = Formula::Op::And, pos += 4;
        else if (s.substr(pos, 3) == "or,") op = Formula::Op::Or, pos += 3;
        else return std::nullopt;
        std::vector<Formula> kids;
        while (true) {
            auto k = read();
            if (!k) return std::nullopt;
            kids.push_back(std::move(*k));
            if (pos >= s.size()) return std::nullopt;
            if (s[pos] == '>') { ++pos; break; }
            if (s[pos] != ',') return std::nullopt;
            ++pos;
        }
        if (op == Formula::Op::Not) {
            if (kids.size() != 1) return std::nullopt;
            return Formula::negation(std::move(kids[0]));
        }
        Formula f;
        f.op = op;
        f.kids = std::move(kids);
        return f;
    }
};

void collect(const Formula& f, std::vector<int>& out) {
    if (f.op == Formula::Op::Var) out.push_back(f.var);
    for (const auto& k : f.kids) collect(k, out);
}

}  // namespace

Formula parse_formula(std::string_view text) { return SexprParser(text).parse_all(); }

std::string to_sexpr(const Formula& f) {
    if (f.op == Formula::Op::Var) return "x" + std::to_string(f.var);
    std::string s = "(";
    s += op_word(f.op);
    for (const auto& k : f.kids) s += " " + to_sexpr(k);
    return s + ")";
}

std::string to_name_expr(const Formula& f) {
    if (f.op == Formula::Op::Var) return "x" + std::to_string(f.var);
    std::string s = "<";
    s += op_word(f.op);
    for (const auto& k : f.kids) s += "," + to_name_expr(k);
    return s + ">";
}

std::optional<Formula> from_name_expr(std::string_view s) {
    NameReader r{s};
    auto f = r.read();
    if (!f || r.pos != s.size()) return std::nullopt;
    return f;
}

std::string encode_formula_name(std::string_view tag, const Formula& f) {
    return "," + std::string(tag) + "," + to_name_expr(f);
}

std::optional<DecodedName> decode_formula_name(std::string_view name) {
    if (name.empty() || name[0] != ',') return std::nullopt;
    std::size_t comma = name.find(',', 1);
    if (comma == std::string_view::npos) return std::nullopt;
    auto f = from_name_expr(name.substr(comma + 1));
    if (!f) return std::nullopt;
    std::vector<int> vs = variables(*f);
    for (std::size_t i = 0; i < vs.size(); ++i)
        if (vs[i] != static_cast<int>(i) + 1) return std::nullopt;
    DecodedName d;
    d.tag = std::string(name.substr(1, comma - 1));
    d.formula = std::move(*f);
    d.z = static_cast<int>(vs.size());
    return d;
}

int max_var(const Formula& f) {
    auto vs = variables(f);
    return vs.empty() ? 0 : vs.back();
}

std::vector<int> variables(const Formula& f) {
    std::vector<int> vs;
    collect(f, vs);
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
}

bool eval(const Formula& f, const std::vector<bool>& bits) {
    switch (f.op) {
    case Formula::Op::Var:
        return f.var >= 1 && f.var <= static_cast<int>(bits.size()) && bits[f.var - 1];
    case Formula::Op::Not: return !eval(f.kids[0], bits);
    case Formula::Op::And:
        for (const auto& k : f.kids)
            if (!eval(k, bits)) return false;
        return true;
    case Formula::Op::Or:
        for (const auto& k : f.kids)
            if (eval(k, bits)) return true;
        return false;
    }
    return false;
}

Formula pad(const Formula& f, int z) {
    std::vector<int> vs = variables(f);
    std::vector<Formula> parts{f};
    for (int i = 1; i <= z; ++i)
        if (!std::binary_search(vs.begin(), vs.end(), i))
            parts.push_back(Formula::disj({Formula::variable(i),
                                           Formula::negation(Formula::variable(i))}));
    if (parts.size() == 1) return f;
    return Formula::conj(std::move(parts));
}

const char* qbf_shape_name(QbfShape s) {
    switch (s) {
    case QbfShape::EA: return "EA";
    case QbfShape::AE: return "AE";
    case QbfShape::AEA: return "AEA";
    }
    return "?";
}

bool qbf_eval(const Formula& f, QbfShape shape) { return qbf_eval(f, shape, max_var(f)); }

bool qbf_eval(const Formula& f, QbfShape shape, int z) {
    std::vector<bool> exists;
    switch (shape) {
    case QbfShape::EA: exists = {true, false}; break;
    case QbfShape::AE: exists = {false, true}; break;
    case QbfShape::AEA: exists = {false, true, false}; break;
    }
    const int blocks = static_cast<int>(exists.size());
    if (z < max_var(f) || z % blocks != 0)
        fail(ErrorKind::MalformedInput, std::string("formula does not split into ") +
                                            qbf_shape_name(shape) + " blocks");
    const int w = z / blocks;
    if (w > 20) fail(ErrorKind::Budget, "quantifier blocks too wide");
    std::vector<bool> bits(z, false);
    std::function<bool(int)> block = [&](int b) -> bool {
        if (b == blocks) return eval(f, bits);
        for (std::uint32_t v = 0; v < (1U << w); ++v) {
            for (int i = 0; i < w; ++i) bits[b * w + i] = (v >> i) & 1U;
            bool r = block(b + 1);
            if (r == exists[b]) return r;
        }
        return !exists[b];
    };
    return block(0);
}

}  // namespace ecm
