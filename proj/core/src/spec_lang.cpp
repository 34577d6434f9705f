#include "subseries/spec_lang.hpp"

#include <cctype>

#include "subseries/constructions.hpp"
#include "subseries/errors.hpp"

namespace subseries::lang {

namespace {

struct Parser {
    std::string_view text;
    std::size_t pos = 0;

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos + 1); }

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    char peek() const { return pos < text.size() ? text[pos] : '\0'; }
    bool eat(char c) {
        if (peek() != c) return false;
        ++pos;
        return true;
    }

    static bool name_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    }
    static bool literal_char(char c) {
        return std::isdigit(static_cast<unsigned char>(c)) || c == '/' || c == '-';
    }

    SpecExpr parse_expr() {
        skip_ws();
        if (!std::isalpha(static_cast<unsigned char>(peek()))) fail("expected a builder name");
        SpecExpr e;
        e.kind = SpecExpr::Kind::Call;
        while (name_char(peek())) e.name += text[pos++];
        skip_ws();
        if (eat('(')) {
            parse_args(e.args, ')');
        }
        return e;
    }

    SpecExpr parse_arg() {
        skip_ws();
        const char c = peek();
        if (c == '[') {
            ++pos;
            SpecExpr e;
            e.kind = SpecExpr::Kind::List;
            parse_args(e.args, ']');
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) return parse_expr();
        if (literal_char(c)) {
            SpecExpr e;
            e.kind = SpecExpr::Kind::Literal;
            while (literal_char(peek())) e.name += text[pos++];
            return e;
        }
        if (c == ',' || c == ')') {  // empty literal slot, e.g. periodic(,1100)
            SpecExpr e;
            e.kind = SpecExpr::Kind::Literal;
            return e;
        }
        fail("expected an argument");
    }

    void parse_args(std::vector<SpecExpr>& out, char closer) {
        skip_ws();
        if (eat(closer)) return;
        for (;;) {
            out.push_back(parse_arg());
            skip_ws();
            if (eat(closer)) return;
            if (!eat(',')) fail(std::string("expected ',' or '") + closer + "'");
        }
    }
};

void print_rec(const SpecExpr& e, std::string& out) {
    switch (e.kind) {
        case SpecExpr::Kind::Literal: out += e.name; return;
        case SpecExpr::Kind::List: {
            out += '[';
            for (std::size_t i = 0; i < e.args.size(); ++i) {
                if (i) out += ',';
                print_rec(e.args[i], out);
            }
            out += ']';
            return;
        }
        case SpecExpr::Kind::Call: {
            out += e.name;
            if (!e.args.empty()) {
                out += '(';
                for (std::size_t i = 0; i < e.args.size(); ++i) {
                    if (i) out += ',';
                    print_rec(e.args[i], out);
                }
                out += ')';
            }
            return;
        }
    }
}

[[noreturn]] void bad(const SpecExpr& e, const std::string& what) {
    throw Error("spec \"" + print_spec(e) + "\": " + what);
}

void expect_arity(const SpecExpr& e, std::size_t n) {
    if (e.args.size() != n)
        bad(e, "arity mismatch: expected " + std::to_string(n) + " argument(s), got " +
                   std::to_string(e.args.size()));
}

Rational rational_arg(const SpecExpr& e, std::size_t idx) {
    const SpecExpr& a = e.args.at(idx);
    if (a.kind != SpecExpr::Kind::Literal) bad(e, "argument " + std::to_string(idx + 1) + " must be a rational");
    auto q = Rational::parse(a.name);
    if (!q) bad(e, "bad rational literal \"" + a.name + "\"");
    return *q;
}

index_t natural_arg(const SpecExpr& e, std::size_t idx) {
    const SpecExpr& a = e.args.at(idx);
    if (a.kind != SpecExpr::Kind::Literal || a.name.empty() ||
        a.name.find_first_not_of("0123456789") != std::string::npos)
        bad(e, "argument " + std::to_string(idx + 1) + " must be a natural number");
    return std::stoull(a.name);
}

std::vector<bool> bits_arg(const SpecExpr& e, std::size_t idx) {
    const SpecExpr& a = e.args.at(idx);
    if (a.kind != SpecExpr::Kind::Literal ||
        a.name.find_first_not_of("01") != std::string::npos)
        bad(e, "argument " + std::to_string(idx + 1) + " must be a bit string");
    std::vector<bool> out;
    out.reserve(a.name.size());
    for (char c : a.name) out.push_back(c == '1');
    return out;
}

std::vector<index_t> natural_list_arg(const SpecExpr& e, std::size_t idx) {
    const SpecExpr& a = e.args.at(idx);
    if (a.kind != SpecExpr::Kind::List) bad(e, "argument " + std::to_string(idx + 1) + " must be a list");
    std::vector<index_t> out;
    for (const auto& item : a.args) {
        if (item.kind != SpecExpr::Kind::Literal || item.name.empty() ||
            item.name.find_first_not_of("0123456789") != std::string::npos)
            bad(e, "list entries must be naturals");
        out.push_back(std::stoull(item.name));
    }
    return out;
}

std::function<index_t(index_t)> build_map(const SpecExpr& e) {
    if (e.kind != SpecExpr::Kind::Call) bad(e, "expected a map expression");
    if (e.name == "affine") {  // affine(a,b): n -> a*n + b
        expect_arity(e, 2);
        const index_t a = natural_arg(e, 0), b = natural_arg(e, 1);
        if (a == 0) bad(e, "affine map must be increasing (a >= 1)");
        return [a, b](index_t n) { return a * n + b; };
    }
    bad(e, "unknown map builder \"" + e.name + "\"");
}

}  // namespace

SpecExpr parse_spec(std::string_view text) {
    Parser p{text};
    SpecExpr e = p.parse_expr();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    return e;
}

std::string print_spec(const SpecExpr& e) {
    std::string out;
    print_rec(e, out);
    return out;
}

IndexSet build_set(const SpecExpr& e) {
    if (e.kind != SpecExpr::Kind::Call) throw Error("expected a set expression");
    const auto& n = e.name;
    if (n == "evens") {
        expect_arity(e, 0);
        return evens();
    }
    if (n == "odds") {
        expect_arity(e, 0);
        return odds();
    }
    if (n == "omega") {
        expect_arity(e, 0);
        return omega();
    }
    if (n == "empty") {
        expect_arity(e, 0);
        return empty_set();
    }
    if (n == "mod") {
        expect_arity(e, 2);
        return mod_class(natural_arg(e, 0), natural_arg(e, 1));
    }
    if (n == "periodic") {
        expect_arity(e, 2);
        return periodic_set(bits_arg(e, 0), bits_arg(e, 1));
    }
    if (n == "finite") {
        expect_arity(e, 1);
        return finite_set(natural_list_arg(e, 0));
    }
    if (n == "union") {
        expect_arity(e, 2);
        return set_union(build_set(e.args[0]), build_set(e.args[1]));
    }
    if (n == "intersect") {
        expect_arity(e, 2);
        return set_intersect(build_set(e.args[0]), build_set(e.args[1]));
    }
    if (n == "compl") {
        expect_arity(e, 1);
        return complement(build_set(e.args[0]));
    }
    if (n == "symm_diff") {
        expect_arity(e, 2);
        return symm_diff(build_set(e.args[0]), build_set(e.args[1]));
    }
    if (n == "blocks") {
        expect_arity(e, 2);
        const SpecExpr& sel = e.args[1];
        if (sel.kind != SpecExpr::Kind::Call || (sel.name != "even" && sel.name != "odd"))
            bad(e, "selector must be even or odd");
        // partitions inside set expressions use a generous default coverage
        IntervalPartition ip = build_partition(e.args[0], index_t{1} << 21);
        return sel.name == "even" ? even_blocks(ip) : odd_blocks(ip);
    }
    if (n == "range") {
        expect_arity(e, 1);
        return range_set(build_map(e.args[0]), print_spec(e.args[0]));
    }
    bad(e, "unknown set builder \"" + n + "\"");
}

IntervalPartition build_partition(const SpecExpr& e, index_t coverage) {
    if (e.kind != SpecExpr::Kind::Call) throw Error("expected a partition expression");
    if (e.name == "singles") {
        expect_arity(e, 0);
        return singleton_partition(coverage);
    }
    if (e.name == "triangle") {
        expect_arity(e, 0);
        index_t blocks = 1;
        while (blocks * (blocks + 1) / 2 < coverage) ++blocks;
        return triangle_partition(blocks);
    }
    if (e.name == "boundaries") {
        expect_arity(e, 1);
        return IntervalPartition::from_boundaries(natural_list_arg(e, 0), true,
                                                  print_spec(e));
    }
    bad(e, "unknown partition builder \"" + e.name + "\"");
}

Series build_series(const SpecExpr& e, index_t horizon) {
    if (e.kind != SpecExpr::Kind::Call) throw Error("expected a series expression");
    const auto& n = e.name;
    if (n == "altharmonic") {
        expect_arity(e, 0);
        return alternating_harmonic();
    }
    if (n == "basel") {
        expect_arity(e, 0);
        return basel_series();
    }
    if (n == "zero") {
        expect_arity(e, 0);
        return zero_series();
    }
    if (n == "scale") {
        expect_arity(e, 2);
        return scale(build_series(e.args[0], horizon), rational_arg(e, 1));
    }
    if (n == "perturb") {
        expect_arity(e, 2);
        return perturb_quadratic(build_series(e.args[0], horizon), rational_arg(e, 1));
    }
    if (n == "flip") {
        expect_arity(e, 2);
        return flip_signs_on(build_series(e.args[0], horizon), build_set(e.args[1]));
    }
    if (n == "add") {
        expect_arity(e, 2);
        return add_pointwise(build_series(e.args[0], horizon), build_series(e.args[1], horizon));
    }
    if (n == "restrict") {
        expect_arity(e, 2);
        return restrict_series(build_series(e.args[0], horizon), build_set(e.args[1]));
    }
    if (n == "alternating_on") {
        expect_arity(e, 1);
        return alternating_on(build_set(e.args[0]), horizon);
    }
    if (n == "alternating_on_two") {
        expect_arity(e, 2);
        return alternating_on_two(build_set(e.args[0]), build_set(e.args[1]), horizon);
    }
    if (n == "split_witness") {
        expect_arity(e, 1);
        return split_witness_series(build_set(e.args[0]), horizon).series;
    }
    if (n == "two_set_defeat") {
        expect_arity(e, 2);
        return two_set_defeat(build_set(e.args[0]), build_set(e.args[1]), horizon).series;
    }
    if (n == "diagonal_defeat") {
        expect_arity(e, 2);
        const SpecExpr& fam = e.args[0];
        if (fam.kind != SpecExpr::Kind::List) bad(e, "first argument must be a list of sets");
        std::vector<IndexSet> family;
        for (const auto& s : fam.args) family.push_back(build_set(s));
        return diagonal_defeat(family, natural_arg(e, 1), horizon).series;
    }
    if (n == "covm_from_y") {
        expect_arity(e, 1);
        const SpecExpr& blocks = e.args[0];
        if (blocks.kind != SpecExpr::Kind::List) bad(e, "argument must be a list of blocks");
        BairePoint y;
        for (const auto& blk : blocks.args) {
            SpecExpr holder;
            holder.kind = SpecExpr::Kind::Call;
            holder.name = "covm_from_y";
            holder.args.push_back(blk);
            y.blocks.push_back(natural_list_arg(holder, 0));
        }
        y.validate();
        return covm_series_from_point(y, y.blocks.size());
    }
    if (n == "ac_from_f") {
        expect_arity(e, 1);
        return ac_series_from_f(natural_list_arg(e, 0));
    }
    bad(e, "unknown series builder \"" + n + "\"");
}

Series build_series(std::string_view text, index_t horizon) {
    return build_series(parse_spec(text), horizon);
}

IndexSet build_set(std::string_view text) { return build_set(parse_spec(text)); }

}  // namespace subseries::lang
