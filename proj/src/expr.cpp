#include <polyprod/error.hpp>
#include <polyprod/expr.hpp>

#include <cctype>
#include <charconv>
#include <map>
#include <tuple>

namespace polyprod {

auto unary_name(UnaryOp op) -> std::string_view
{
    switch (op) {
    case UnaryOp::Pyr: return "pyr";
    case UnaryOp::Prism: return "prism";
    case UnaryOp::Bipyr: return "bipyr";
    case UnaryOp::Dual: return "dual";
    }
    return "?";
}

auto operator==(const Expr& a, const Expr& b) -> bool
{
    if (a.kind != b.kind || a.args != b.args)
        return false;
    switch (a.kind) {
    case Expr::Kind::Atom: return a.atom.kind == b.atom.kind && a.atom.a == b.atom.a && a.atom.b == b.atom.b;
    case Expr::Kind::Unary: return a.unary == b.unary;
    case Expr::Kind::Binary: return a.product == b.product;
    case Expr::Kind::Power: return a.exponent == b.exponent;
    }
    return false;
}

namespace {

struct Token {
    enum class Type { Ident, Int, LParen, RParen, Comma, Caret, End };
    Type type;
    std::string text;
    int pos;
};

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) { advance(); }

    auto parse() -> Expr
    {
        Expr e = expr();
        if (tok_.type != Token::Type::End)
            fail("unexpected '" + tok_.text + "'");
        return e;
    }

private:
    [[noreturn]] auto fail(const std::string& what, int pos = -1) const -> void
    {
        throw Error(ErrorCode::SyntaxError, what + " at position " + std::to_string(pos < 0 ? tok_.pos : pos));
    }

    auto advance() -> void
    {
        while (i_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[i_])))
            ++i_;
        const int pos = static_cast<int>(i_);
        if (i_ == text_.size()) {
            tok_ = {Token::Type::End, "end of input", pos};
            return;
        }
        char c = text_[i_];
        auto single = [&](Token::Type t) {
            tok_ = {t, std::string(1, c), pos};
            ++i_;
        };
        switch (c) {
        case '(': return single(Token::Type::LParen);
        case ')': return single(Token::Type::RParen);
        case ',': return single(Token::Type::Comma);
        case '^': return single(Token::Type::Caret);
        default: break;
        }
        std::size_t j = i_;
        if (std::isalpha(static_cast<unsigned char>(c))) {
            while (j < text_.size() && std::isalpha(static_cast<unsigned char>(text_[j])))
                ++j;
            tok_ = {Token::Type::Ident, std::string(text_.substr(i_, j - i_)), pos};
        }
        else if (std::isdigit(static_cast<unsigned char>(c))) {
            while (j < text_.size() && std::isdigit(static_cast<unsigned char>(text_[j])))
                ++j;
            tok_ = {Token::Type::Int, std::string(text_.substr(i_, j - i_)), pos};
        }
        else
            fail(std::string("unexpected character '") + c + "'", pos);
        i_ = j;
    }

    auto expect(Token::Type t, const char* what) -> void
    {
        if (tok_.type != t)
            fail(std::string("expected ") + what + ", found '" + tok_.text + "'");
        advance();
    }

    auto integer(int lo, int hi, const std::string& name) -> int
    {
        if (tok_.type != Token::Type::Int)
            fail("expected an integer, found '" + tok_.text + "'");
        int v = 0;
        auto [ptr, ec] = std::from_chars(tok_.text.data(), tok_.text.data() + tok_.text.size(), v);
        if (ec != std::errc() || v < lo || v > hi)
            throw Error(ErrorCode::RangeError, name + " must lie in " + std::to_string(lo) + ".." + std::to_string(hi) +
                    " at position " + std::to_string(tok_.pos));
        advance();
        return v;
    }

    auto expr() -> Expr
    {
        Expr left = term();
        while (tok_.type == Token::Type::Ident) {
            auto kind = parse_kind(tok_.text);
            if (! kind)
                fail("expected join, cart, dsum or topo, found '" + tok_.text + "'");
            advance();
            Expr right = term();
            Expr b;
            b.kind = Expr::Kind::Binary;
            b.product = *kind;
            b.position = left.position;
            b.args = {std::move(left), std::move(right)};
            left = std::move(b);
        }
        return left;
    }

    auto term() -> Expr
    {
        Expr t = primary();
        while (tok_.type == Token::Type::Caret) {
            advance();
            Expr p;
            p.kind = Expr::Kind::Power;
            p.position = t.position;
            p.exponent = integer(1, 12, "exponent");
            p.args = {std::move(t)};
            t = std::move(p);
        }
        return t;
    }

    auto primary() -> Expr
    {
        const int pos = tok_.pos;
        if (tok_.type == Token::Type::LParen) {
            advance();
            Expr e = expr();
            expect(Token::Type::RParen, "')'");
            return e;
        }
        if (tok_.type != Token::Type::Ident)
            fail("expected a polytope, found '" + tok_.text + "'");
        const std::string name = tok_.text;
        advance();

        static const std::map<std::string, UnaryOp> unary{
            {"pyr", UnaryOp::Pyr}, {"prism", UnaryOp::Prism}, {"bipyr", UnaryOp::Bipyr}, {"dual", UnaryOp::Dual}};
        Expr e;
        e.position = pos;
        if (auto it = unary.find(name); it != unary.end()) {
            expect(Token::Type::LParen, "'('");
            e.kind = Expr::Kind::Unary;
            e.unary = it->second;
            e.args.push_back(expr());
            expect(Token::Type::RParen, "')'");
            return e;
        }
        e.kind = Expr::Kind::Atom;
        auto one = [&](CatalogKind k, int lo, int hi) {
            expect(Token::Type::LParen, "'('");
            e.atom = {k, integer(lo, hi, name + " parameter"), 0};
            expect(Token::Type::RParen, "')'");
        };
        if (name == "point")
            e.atom = {CatalogKind::Point, 0, 0};
        else if (name == "edge")
            e.atom = {CatalogKind::Edge, 0, 0};
        else if (name == "gon")
            one(CatalogKind::Gon, 2, 10'000);
        else if (name == "simplex")
            one(CatalogKind::Simplex, 0, 8);
        else if (name == "cube")
            one(CatalogKind::Cube, 1, 8);
        else if (name == "cross")
            one(CatalogKind::Cross, 1, 8);
        else if (name == "torus") {
            expect(Token::Type::LParen, "'('");
            int p = integer(2, 64, "torus p");
            expect(Token::Type::Comma, "','");
            int d = integer(2, 4, "torus d");
            expect(Token::Type::RParen, "')'");
            e.atom = {CatalogKind::Torus, p, d};
        }
        else
            fail("unknown name '" + name + "'", pos);
        return e;
    }

    std::string_view text_;
    std::size_t i_ = 0;
    Token tok_{Token::Type::End, "", 0};
};

using AtomKey = std::tuple<int, int, int>;

auto eval(const Expr& e, ProductKind context, ProductKind default_kind, std::map<AtomKey, Polytope>& cache) -> Polytope
{
    switch (e.kind) {
    case Expr::Kind::Atom: {
        AtomKey key{static_cast<int>(e.atom.kind), e.atom.a, e.atom.b};
        auto it = cache.find(key);
        if (it == cache.end())
            it = cache.emplace(key, make(e.atom)).first;
        return it->second;
    }
    case Expr::Kind::Unary: {
        Polytope inner = eval(e.args[0], default_kind, default_kind, cache);
        switch (e.unary) {
        case UnaryOp::Pyr: return pyr(inner);
        case UnaryOp::Prism: return pri(inner);
        case UnaryOp::Bipyr: return bipyr(inner);
        case UnaryOp::Dual: return dual(inner);
        }
        break;
    }
    case Expr::Kind::Binary:
        return product(e.product, eval(e.args[0], e.product, default_kind, cache), eval(e.args[1], e.product, default_kind, cache));
    case Expr::Kind::Power: return power(context, eval(e.args[0], context, default_kind, cache), e.exponent);
    }
    throw Error(ErrorCode::InvalidInput, "malformed expression");
}

} // namespace

auto parse_expr(std::string_view text) -> Expr
{
    return Parser(text).parse();
}

auto to_string(const Expr& e) -> std::string
{
    switch (e.kind) {
    case Expr::Kind::Atom: return catalog_name(e.atom);
    case Expr::Kind::Unary: return std::string(unary_name(e.unary)) + "(" + to_string(e.args[0]) + ")";
    case Expr::Kind::Binary: {
        std::string right = to_string(e.args[1]);
        if (e.args[1].kind == Expr::Kind::Binary)
            right = "(" + right + ")";
        return to_string(e.args[0]) + " " + std::string(kind_name(e.product)) + " " + right;
    }
    case Expr::Kind::Power: {
        std::string base = to_string(e.args[0]);
        if (e.args[0].kind == Expr::Kind::Binary)
            base = "(" + base + ")";
        return base + " ^ " + std::to_string(e.exponent);
    }
    }
    return "?";
}

auto evaluate(const Expr& e, ProductKind default_kind) -> Polytope
{
    std::map<AtomKey, Polytope> cache;
    return eval(e, default_kind, default_kind, cache);
}

} // namespace polyprod
