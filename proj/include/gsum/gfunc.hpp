#pragma once

#include <cctype>
#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "gsum/errors.hpp"

// Function interface and builtin catalog. Every function is scaled so that
// g(1) = 1 and pinned to g(0) = 0; validation enforces g(x) > 0 on
// [1..domain_bound].

namespace gsum {

class GFunction {
public:
    GFunction() = default;

    GFunction(std::string name, std::function<double(std::int64_t)> raw,
              std::int64_t domain_bound)
        : name_(std::move(name)), raw_(std::move(raw)), bound_(domain_bound) {
        if (bound_ < 1) throw InvalidParams("domain_bound must be >= 1");
        double at1 = raw_(1);
        if (!std::isfinite(at1) || at1 == 0.0)
            throw NotInClassG(name_ + ": cannot normalize, g(1) = " + std::to_string(at1));
        norm_ = at1;
        validate();
    }

    double operator()(std::int64_t x) const { return eval(x); }

    double eval(std::int64_t x) const {
        if (x < 0) x = -x;  // symmetric extension g(|x|)
        if (x == 0) return 0.0;
        if (x > bound_)
            throw DomainError(name_ + ": x = " + std::to_string(x) +
                              " beyond domain_bound " + std::to_string(bound_));
        return raw_(x) / norm_;
    }

    const std::string& name() const { return name_; }
    std::int64_t domain_bound() const { return bound_; }

private:
    void validate() const {
        // Cheap scan at construction; the full-range sweep lives in a
        // dedicated test because builtins are used with bounds up to 2^20.
        std::int64_t quick = std::min<std::int64_t>(bound_, 4096);
        for (std::int64_t x = 1; x <= quick; ++x) check_positive(x);
        for (std::int64_t x = quick; x <= bound_; x += std::max<std::int64_t>(1, bound_ / 4096))
            check_positive(x);
        check_positive(bound_);
    }

    void check_positive(std::int64_t x) const {
        double v = raw_(x) / norm_;
        if (!std::isfinite(v) || v <= 0.0) {
            throw NotInClassG(name_ + ": g(" + std::to_string(x) +
                              ") = " + std::to_string(v) + " not positive");
        }
    }

    std::string name_;
    std::function<double(std::int64_t)> raw_;
    double norm_ = 1.0;
    std::int64_t bound_ = 1;
};

// Exhaustive class-G validation over [1..bound].
inline void validate_class_g(const GFunction& g, std::int64_t bound) {
    if (bound > g.domain_bound()) throw DomainError("validation bound beyond domain_bound");
    if (g.eval(0) != 0.0) throw NotInClassG(g.name() + ": g(0) != 0");
    for (std::int64_t x = 1; x <= bound; ++x) {
        double v = g.eval(x);
        if (!std::isfinite(v) || v <= 0.0)
            throw NotInClassG(g.name() + ": g(" + std::to_string(x) + ") not positive");
    }
    if (std::abs(g.eval(1) - 1.0) > 1e-12) throw NotInClassG(g.name() + ": g(1) != 1");
}

// Lowest set bit weight 2^{-i_x}; the tractable nearly-periodic example.
inline double lowest_set_bit_weight(std::int64_t x) {
    if (x <= 0) throw DomainError("lowest_set_bit_weight requires x >= 1");
    int i = __builtin_ctzll(static_cast<unsigned long long>(x));
    return std::ldexp(1.0, -i);
}

namespace detail {

// Minimal recursive-descent parser for closed-form expressions in x.
// Grammar: + - * / ^, unary minus, parentheses, functions
// sin cos sqrt log exp floor abs, numeric literals, variable x.
class ExprParser {
public:
    struct Node {
        enum class Op { num, var, add, sub, mul, div, pow, neg, call } op;
        double value = 0;
        int func = 0;
        std::unique_ptr<Node> lhs, rhs;
    };

    explicit ExprParser(std::string text) : text_(std::move(text)) {}

    std::unique_ptr<Node> parse() {
        pos_ = 0;
        auto node = parse_sum();
        skip_ws();
        if (pos_ != text_.size())
            throw ParseError("expr: unexpected input at offset " + std::to_string(pos_));
        return node;
    }

    static double eval(const Node& n, double x) {
        switch (n.op) {
            case Node::Op::num: return n.value;
            case Node::Op::var: return x;
            case Node::Op::add: return eval(*n.lhs, x) + eval(*n.rhs, x);
            case Node::Op::sub: return eval(*n.lhs, x) - eval(*n.rhs, x);
            case Node::Op::mul: return eval(*n.lhs, x) * eval(*n.rhs, x);
            case Node::Op::div: return eval(*n.lhs, x) / eval(*n.rhs, x);
            case Node::Op::pow: return std::pow(eval(*n.lhs, x), eval(*n.rhs, x));
            case Node::Op::neg: return -eval(*n.lhs, x);
            case Node::Op::call: {
                double v = eval(*n.lhs, x);
                switch (n.func) {
                    case 0: return std::sin(v);
                    case 1: return std::cos(v);
                    case 2: return std::sqrt(v);
                    case 3: return std::log(v);
                    case 4: return std::exp(v);
                    case 5: return std::floor(v);
                    case 6: return std::abs(v);
                }
                throw ParseError("expr: unknown function id");
            }
        }
        throw ParseError("expr: bad node");
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool consume(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    std::unique_ptr<Node> make(Node::Op op, std::unique_ptr<Node> l = nullptr,
                               std::unique_ptr<Node> r = nullptr) {
        auto n = std::make_unique<Node>();
        n->op = op;
        n->lhs = std::move(l);
        n->rhs = std::move(r);
        return n;
    }

    std::unique_ptr<Node> parse_sum() {
        auto lhs = parse_product();
        for (;;) {
            if (consume('+')) lhs = make(Node::Op::add, std::move(lhs), parse_product());
            else if (consume('-')) lhs = make(Node::Op::sub, std::move(lhs), parse_product());
            else return lhs;
        }
    }

    std::unique_ptr<Node> parse_product() {
        auto lhs = parse_unary();
        for (;;) {
            if (consume('*')) lhs = make(Node::Op::mul, std::move(lhs), parse_unary());
            else if (consume('/')) lhs = make(Node::Op::div, std::move(lhs), parse_unary());
            else return lhs;
        }
    }

    std::unique_ptr<Node> parse_unary() {
        if (consume('-')) return make(Node::Op::neg, parse_unary());
        return parse_power();
    }

    std::unique_ptr<Node> parse_power() {
        auto base = parse_atom();
        if (consume('^')) return make(Node::Op::pow, std::move(base), parse_unary());
        return base;
    }

    std::unique_ptr<Node> parse_atom() {
        skip_ws();
        if (pos_ >= text_.size()) throw ParseError("expr: unexpected end of input");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            auto inner = parse_sum();
            if (!consume(')')) throw ParseError("expr: missing ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t end = pos_;
            while (end < text_.size() &&
                   (std::isdigit(static_cast<unsigned char>(text_[end])) || text_[end] == '.'))
                ++end;
            auto n = make(Node::Op::num);
            n->value = std::stod(text_.substr(pos_, end - pos_));
            pos_ = end;
            return n;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t end = pos_;
            while (end < text_.size() && std::isalpha(static_cast<unsigned char>(text_[end]))) ++end;
            std::string word = text_.substr(pos_, end - pos_);
            pos_ = end;
            if (word == "x") return make(Node::Op::var);
            static const std::vector<std::string> funcs = {"sin", "cos",   "sqrt", "log",
                                                           "exp", "floor", "abs"};
            for (std::size_t i = 0; i < funcs.size(); ++i) {
                if (word == funcs[i]) {
                    if (!consume('(')) throw ParseError("expr: expected '(' after " + word);
                    auto arg = parse_sum();
                    if (!consume(')')) throw ParseError("expr: missing ')' after " + word);
                    auto n = make(Node::Op::call, std::move(arg));
                    n->func = static_cast<int>(i);
                    return n;
                }
            }
            throw ParseError("expr: unknown identifier \"" + word + "\"");
        }
        throw ParseError(std::string("expr: unexpected character '") + c + "'");
    }

    std::string text_;
    std::size_t pos_ = 0;
};

inline double log_poisson_pmf(std::int64_t x, double rate) {
    return double(x) * std::log(rate) - rate - std::lgamma(double(x) + 1.0);
}

}  // namespace detail

inline constexpr std::int64_t kDefaultDomainBound = std::int64_t(1) << 20;

// Builtin catalog. Names: power(p), f2, recip, sin-sqrt-sq, sin-x-sq,
// sin-log-sq, log-poly, exp-sqrt-log, gnp, poisson-mix-nll(lambda,a,b),
// expr(string). Each is rescaled so that g(1) = 1.
inline GFunction make_builtin(const std::string& name, const std::vector<double>& params = {},
                              std::int64_t domain_bound = kDefaultDomainBound) {
    auto need = [&](std::size_t k) {
        if (params.size() != k)
            throw InvalidParams(name + ": expected " + std::to_string(k) + " parameter(s)");
    };
    if (name == "power") {
        need(1);
        double p = params[0];
        if (p < 0) throw InvalidParams("power: exponent must be >= 0");
        return GFunction("power(" + std::to_string(p) + ")",
                         [p](std::int64_t x) { return std::pow(double(x), p); }, domain_bound);
    }
    if (name == "f2") {
        return GFunction("f2", [](std::int64_t x) { return double(x) * double(x); }, domain_bound);
    }
    if (name == "recip") {
        return GFunction("recip", [](std::int64_t x) { return 1.0 / double(x); }, domain_bound);
    }
    if (name == "sin-sqrt-sq") {
        return GFunction("sin-sqrt-sq",
                         [](std::int64_t x) {
                             double d = double(x);
                             return (2.0 + std::sin(std::sqrt(d))) * d * d;
                         },
                         domain_bound);
    }
    if (name == "sin-x-sq") {
        return GFunction("sin-x-sq",
                         [](std::int64_t x) {
                             double d = double(x);
                             return (2.0 + std::sin(d)) * d * d;
                         },
                         domain_bound);
    }
    if (name == "sin-log-sq") {
        return GFunction("sin-log-sq",
                         [](std::int64_t x) {
                             double d = double(x);
                             return (2.0 + std::sin(std::log(1.0 + d))) * d * d;
                         },
                         domain_bound);
    }
    if (name == "log-poly") {
        return GFunction("log-poly",
                         [](std::int64_t x) {
                             double d = double(x);
                             return d * d * std::log2(1.0 + d);
                         },
                         domain_bound);
    }
    if (name == "exp-sqrt-log") {
        return GFunction("exp-sqrt-log",
                         [](std::int64_t x) {
                             return std::exp(std::sqrt(std::log(1.0 + double(x))));
                         },
                         domain_bound);
    }
    if (name == "gnp") {
        return GFunction("gnp", [](std::int64_t x) { return lowest_set_bit_weight(x); },
                         domain_bound);
    }
    if (name == "poisson-mix-nll") {
        need(3);
        double lam = params[0], a = params[1], b = params[2];
        if (lam <= 0 || lam >= 1 || a <= 0 || b <= 0)
            throw InvalidParams("poisson-mix-nll: need 0<lambda<1 and positive rates");
        // Negative log-likelihood of a two-Poisson mixture, computed with
        // log-sum-exp so large x does not underflow.
        return GFunction("poisson-mix-nll",
                         [lam, a, b](std::int64_t x) {
                             double la = std::log(lam) + detail::log_poisson_pmf(x, a);
                             double lb = std::log1p(-lam) + detail::log_poisson_pmf(x, b);
                             double hi = std::max(la, lb);
                             double lp = hi + std::log(std::exp(la - hi) + std::exp(lb - hi));
                             return -lp;
                         },
                         domain_bound);
    }
    if (name == "expr") {
        throw InvalidParams("expr builtin requires make_expr_function(text)");
    }
    throw InvalidProfile("unknown builtin function \"" + name + "\"");
}

inline GFunction make_expr_function(const std::string& text,
                                    std::int64_t domain_bound = kDefaultDomainBound) {
    auto root = std::make_shared<std::unique_ptr<detail::ExprParser::Node>>(
        detail::ExprParser(text).parse());
    return GFunction("expr(" + text + ")",
                     [root](std::int64_t x) {
                         return detail::ExprParser::eval(**root, double(x));
                     },
                     domain_bound);
}

// CLI g-spec grammar: "power:2", "gnp", "expr:(2+sin(sqrt(x)))*x^2",
// "poisson:0.5,2,7".
inline GFunction parse_gspec(const std::string& spec,
                             std::int64_t domain_bound = kDefaultDomainBound) {
    std::string head = spec, tail;
    if (auto colon = spec.find(':'); colon != std::string::npos) {
        head = spec.substr(0, colon);
        tail = spec.substr(colon + 1);
    }
    if (head == "expr") {
        if (tail.empty()) throw InvalidParams("expr: missing expression text");
        return make_expr_function(tail, domain_bound);
    }
    std::vector<double> params;
    if (!tail.empty()) {
        std::size_t start = 0;
        while (start <= tail.size()) {
            std::size_t comma = tail.find(',', start);
            std::string tok = tail.substr(start, comma == std::string::npos ? std::string::npos
                                                                            : comma - start);
            try {
                params.push_back(std::stod(tok));
            } catch (const std::exception&) {
                throw InvalidParams("bad numeric parameter \"" + tok + "\" in g-spec");
            }
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
    }
    if (head == "poisson") return make_builtin("poisson-mix-nll", params, domain_bound);
    return make_builtin(head, params, domain_bound);
}

}  // namespace gsum
