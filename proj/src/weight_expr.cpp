#include "chainweight/weight_expr.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "chainweight/errors.hpp"

namespace chainweight {

namespace detail {

struct ExprNode {
    enum class Kind { variable, constant, sum, product, power, min, max, opaque };

    Kind kind = Kind::constant;
    VarKind var_kind = VarKind::space;
    std::size_t var_index = 0;                            // variable
    double value = 0;                                     // constant / pow exponent
    std::vector<std::shared_ptr<const ExprNode>> children;
    std::function<double(const ResourcePoint&)> fn;       // opaque
    Dims fn_dims;
    std::string fn_name;
};

}  // namespace detail

namespace {

using Node = detail::ExprNode;
using NodePtr = std::shared_ptr<const Node>;

constexpr double kDegreeEps = 1e-12;

NodePtr make_node(Node n) { return std::make_shared<const Node>(std::move(n)); }

// -- evaluation --------------------------------------------------------------

double eval_node(const Node& n, const ResourcePoint& p) {
    switch (n.kind) {
        case Node::Kind::variable: {
            const auto& v = n.var_kind == VarKind::space ? p.space
                          : n.var_kind == VarKind::vdf   ? p.vdf
                                                         : p.work;
            return v[n.var_index];
        }
        case Node::Kind::constant:
            return n.value;
        case Node::Kind::sum: {
            double acc = 0;
            for (const auto& c : n.children) acc += eval_node(*c, p);
            return acc;
        }
        case Node::Kind::product: {
            double acc = 1;
            for (const auto& c : n.children) acc *= eval_node(*c, p);
            return acc;
        }
        case Node::Kind::power:
            return std::pow(eval_node(*n.children[0], p), n.value);
        case Node::Kind::min: {
            double acc = eval_node(*n.children[0], p);
            for (std::size_t i = 1; i < n.children.size(); ++i)
                acc = std::min(acc, eval_node(*n.children[i], p));
            return acc;
        }
        case Node::Kind::max: {
            double acc = eval_node(*n.children[0], p);
            for (std::size_t i = 1; i < n.children.size(); ++i)
                acc = std::max(acc, eval_node(*n.children[i], p));
            return acc;
        }
        case Node::Kind::opaque:
            return n.fn(p);
    }
    throw std::logic_error("unreachable");
}

void collect_dims(const Node& n, Dims& d) {
    switch (n.kind) {
        case Node::Kind::variable: {
            const std::size_t need = n.var_index + 1;
            if (n.var_kind == VarKind::space) d.space = std::max(d.space, need);
            if (n.var_kind == VarKind::vdf) d.vdf = std::max(d.vdf, need);
            if (n.var_kind == VarKind::work) d.work = std::max(d.work, need);
            break;
        }
        case Node::Kind::opaque:
            d.space = std::max(d.space, n.fn_dims.space);
            d.vdf = std::max(d.vdf, n.fn_dims.vdf);
            d.work = std::max(d.work, n.fn_dims.work);
            break;
        default:
            for (const auto& c : n.children) collect_dims(*c, d);
    }
}

bool any_node(const Node& n, bool (*pred)(const Node&)) {
    if (pred(n)) return true;
    for (const auto& c : n.children)
        if (any_node(*c, pred)) return true;
    return false;
}

bool depends_on_variables(const Node& n) {
    switch (n.kind) {
        case Node::Kind::variable:
        case Node::Kind::opaque:
            return true;
        case Node::Kind::constant:
            return false;
        case Node::Kind::power:
            // x^0 is constant no matter what x references
            return n.value != 0 && depends_on_variables(*n.children[0]);
        default:
            for (const auto& c : n.children)
                if (depends_on_variables(*c)) return true;
            return false;
    }
}

// -- structural scaling analysis ----------------------------------------------

std::optional<double> timed_degree(const Node& n) {
    switch (n.kind) {
        case Node::Kind::variable:
            return n.var_kind == VarKind::space ? 0.0 : 1.0;
        case Node::Kind::constant:
            return 0.0;
        case Node::Kind::sum:
        case Node::Kind::min:
        case Node::Kind::max: {
            std::optional<double> deg;
            for (const auto& c : n.children) {
                auto d = timed_degree(*c);
                if (!d) return std::nullopt;
                if (!deg) {
                    deg = d;
                } else if (std::abs(*deg - *d) > kDegreeEps) {
                    return std::nullopt;  // mixed degrees: no single scaling law
                }
            }
            return deg;
        }
        case Node::Kind::product: {
            double acc = 0;
            for (const auto& c : n.children) {
                auto d = timed_degree(*c);
                if (!d) return std::nullopt;
                acc += *d;
            }
            return acc;
        }
        case Node::Kind::power: {
            auto d = timed_degree(*n.children[0]);
            if (!d) return std::nullopt;
            return n.value * *d;
        }
        case Node::Kind::opaque:
            return std::nullopt;
    }
    return std::nullopt;
}

std::optional<double> space_bound(const Node& n) {
    switch (n.kind) {
        case Node::Kind::variable:
            return n.var_kind == VarKind::space ? 1.0 : 0.0;
        case Node::Kind::constant:
            return 0.0;
        case Node::Kind::sum:
        case Node::Kind::min:
        case Node::Kind::max: {
            double acc = 0;
            for (const auto& c : n.children) {
                auto u = space_bound(*c);
                if (!u) return std::nullopt;
                acc = std::max(acc, *u);
            }
            return acc;
        }
        case Node::Kind::product: {
            double acc = 0;
            for (const auto& c : n.children) {
                auto u = space_bound(*c);
                if (!u) return std::nullopt;
                acc += *u;
            }
            return acc;
        }
        case Node::Kind::power: {
            auto u = space_bound(*n.children[0]);
            if (!u) return std::nullopt;
            return n.value * *u;
        }
        case Node::Kind::opaque:
            return std::nullopt;
    }
    return std::nullopt;
}

// -- printing ------------------------------------------------------------------

void print_node(const Node& n, std::string& out, bool parenthesize_sum) {
    char buf[64];
    switch (n.kind) {
        case Node::Kind::variable: {
            const char c = n.var_kind == VarKind::space ? 'S'
                         : n.var_kind == VarKind::vdf   ? 'V'
                                                        : 'W';
            std::snprintf(buf, sizeof buf, "%c%zu", c, n.var_index + 1);
            out += buf;
            break;
        }
        case Node::Kind::constant:
            std::snprintf(buf, sizeof buf, "%.17g", n.value);
            out += buf;
            break;
        case Node::Kind::sum: {
            if (parenthesize_sum) out += '(';
            for (std::size_t i = 0; i < n.children.size(); ++i) {
                if (i) out += " + ";
                print_node(*n.children[i], out, false);
            }
            if (parenthesize_sum) out += ')';
            break;
        }
        case Node::Kind::product:
            for (std::size_t i = 0; i < n.children.size(); ++i) {
                if (i) out += " * ";
                print_node(*n.children[i], out, true);
            }
            break;
        case Node::Kind::power: {
            out += "pow(";
            print_node(*n.children[0], out, false);
            std::snprintf(buf, sizeof buf, ", %.17g)", n.value);
            out += buf;
            break;
        }
        case Node::Kind::min:
        case Node::Kind::max: {
            out += n.kind == Node::Kind::min ? "min(" : "max(";
            for (std::size_t i = 0; i < n.children.size(); ++i) {
                if (i) out += ", ";
                print_node(*n.children[i], out, false);
            }
            out += ')';
            break;
        }
        case Node::Kind::opaque:
            out += '<' + n.fn_name + '>';
            break;
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// construction

WeightExpr WeightExpr::variable(VarKind kind, std::size_t index) {
    Node n;
    n.kind = Node::Kind::variable;
    n.var_kind = kind;
    n.var_index = index;
    return WeightExpr(make_node(std::move(n)));
}

WeightExpr WeightExpr::constant(double value) {
    if (!(value > 0) || !std::isfinite(value))
        throw std::invalid_argument("constants must be positive and finite");
    Node n;
    n.kind = Node::Kind::constant;
    n.value = value;
    return WeightExpr(make_node(std::move(n)));
}

WeightExpr WeightExpr::power(WeightExpr base, double exponent) {
    if (!(exponent >= 0) || !std::isfinite(exponent))
        throw std::invalid_argument("pow exponents must be >= 0");
    Node n;
    n.kind = Node::Kind::power;
    n.value = exponent;
    n.children.push_back(std::move(base.root_));
    return WeightExpr(make_node(std::move(n)));
}

namespace {

Node nary_node(Node::Kind kind) {
    Node n;
    n.kind = kind;
    return n;
}

}  // namespace

#define CHAINWEIGHT_DEFINE_NARY(fn_name, kind_name)                              \
    WeightExpr WeightExpr::fn_name(std::vector<WeightExpr> args) {               \
        if (args.empty())                                                        \
            throw std::invalid_argument(#fn_name " needs at least one operand"); \
        if (args.size() == 1) return std::move(args.front());                    \
        Node n = nary_node(Node::Kind::kind_name);                               \
        n.children.reserve(args.size());                                         \
        for (auto& a : args) n.children.push_back(std::move(a.root_));           \
        return WeightExpr(make_node(std::move(n)));                              \
    }

CHAINWEIGHT_DEFINE_NARY(sum, sum)
CHAINWEIGHT_DEFINE_NARY(product, product)
CHAINWEIGHT_DEFINE_NARY(minimum, min)
CHAINWEIGHT_DEFINE_NARY(maximum, max)

#undef CHAINWEIGHT_DEFINE_NARY

WeightExpr WeightExpr::opaque(std::function<double(const ResourcePoint&)> fn,
                              Dims dims, std::string name) {
    Node n;
    n.kind = Node::Kind::opaque;
    n.fn = std::move(fn);
    n.fn_dims = dims;
    n.fn_name = std::move(name);
    return WeightExpr(make_node(std::move(n)));
}

// ---------------------------------------------------------------------------
// queries

double WeightExpr::eval(const ResourcePoint& point) const {
    if (!point.dims().covers(required_dims()))
        throw std::invalid_argument("point dimensions do not cover expression requirements");
    return eval_node(*root_, point);
}

Dims WeightExpr::required_dims() const {
    Dims d;
    collect_dims(*root_, d);
    return d;
}

bool WeightExpr::references_variable() const {
    return depends_on_variables(*root_);
}

bool WeightExpr::has_opaque_node() const {
    return any_node(*root_, [](const Node& n) { return n.kind == Node::Kind::opaque; });
}

std::optional<double> WeightExpr::timed_scaling_degree() const {
    return timed_degree(*root_);
}

std::optional<double> WeightExpr::space_scaling_bound() const {
    return space_bound(*root_);
}

std::string WeightExpr::to_string() const {
    std::string out;
    print_node(*root_, out, false);
    return out;
}

// ---------------------------------------------------------------------------
// parser

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    WeightExpr parse() {
        WeightExpr e = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg + " at position " + std::to_string(pos_), pos_);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool consume(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!consume(c)) fail(std::string("expected '") + c + "'");
    }

    WeightExpr parse_expr() {
        std::vector<WeightExpr> terms;
        terms.push_back(parse_term());
        while (consume('+')) terms.push_back(parse_term());
        return WeightExpr::sum(std::move(terms));
    }

    WeightExpr parse_term() {
        std::vector<WeightExpr> factors;
        factors.push_back(parse_factor());
        while (consume('*')) factors.push_back(parse_factor());
        return WeightExpr::product(std::move(factors));
    }

    WeightExpr parse_factor() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            WeightExpr e = parse_expr();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const std::size_t at = pos_;
            const double v = parse_number();
            if (!(v > 0)) {
                pos_ = at;
                fail("literal must be positive");
            }
            return WeightExpr::constant(v);
        }
        if (std::isalpha(static_cast<unsigned char>(c))) return parse_identifier();
        fail("expected a number, variable, function or '('");
    }

    WeightExpr parse_identifier() {
        const std::size_t at = pos_;
        std::string name;
        while (pos_ < text_.size() &&
               std::isalpha(static_cast<unsigned char>(text_[pos_])))
            name += text_[pos_++];

        if (name == "min" || name == "max") {
            expect('(');
            std::vector<WeightExpr> args;
            args.push_back(parse_expr());
            expect(',');
            args.push_back(parse_expr());
            while (consume(',')) args.push_back(parse_expr());
            expect(')');
            return name == "min" ? WeightExpr::minimum(std::move(args))
                                 : WeightExpr::maximum(std::move(args));
        }
        if (name == "pow") {
            expect('(');
            WeightExpr base = parse_expr();
            expect(',');
            skip_ws();
            const std::size_t num_at = pos_;
            const double exponent = parse_number();
            if (!(exponent >= 0)) {
                pos_ = num_at;
                fail("pow exponent must be >= 0");
            }
            expect(')');
            return WeightExpr::power(std::move(base), exponent);
        }
        if (name.size() == 1 && (name[0] == 'S' || name[0] == 'V' || name[0] == 'W')) {
            if (pos_ >= text_.size() ||
                !std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
                text_[pos_] == '0') {
                pos_ = at;
                fail("variable needs a 1-based index (e.g. S1, V2, W1)");
            }
            std::size_t index = 0;
            while (pos_ < text_.size() &&
                   std::isdigit(static_cast<unsigned char>(text_[pos_])))
                index = index * 10 + static_cast<std::size_t>(text_[pos_++] - '0');
            const VarKind kind = name[0] == 'S' ? VarKind::space
                               : name[0] == 'V' ? VarKind::vdf
                                                : VarKind::work;
            return WeightExpr::variable(kind, index - 1);
        }
        pos_ = at;
        fail("unknown identifier '" + name + "'");
    }

    double parse_number() {
        skip_ws();
        const std::size_t at = pos_;
        std::size_t end = pos_;
        while (end < text_.size() &&
               (std::isdigit(static_cast<unsigned char>(text_[end])) || text_[end] == '.'))
            ++end;
        if (end < text_.size() && (text_[end] == 'e' || text_[end] == 'E')) {
            std::size_t exp = end + 1;
            if (exp < text_.size() && (text_[exp] == '+' || text_[exp] == '-')) ++exp;
            if (exp < text_.size() && std::isdigit(static_cast<unsigned char>(text_[exp]))) {
                ++exp;
                while (exp < text_.size() &&
                       std::isdigit(static_cast<unsigned char>(text_[exp])))
                    ++exp;
                end = exp;
            }
        }
        if (end == at) fail("expected a number");
        const std::string token(text_.substr(at, end - at));
        try {
            std::size_t used = 0;
            const double v = std::stod(token, &used);
            if (used != token.size()) throw std::invalid_argument(token);
            pos_ = end;
            return v;
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception&) {
            fail("malformed number '" + token + "'");
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

WeightExpr WeightExpr::parse(std::string_view text) {
    return Parser(text).parse();
}

}  // namespace chainweight
