#include "upds/regex.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace upds {

namespace {

struct Token {
    enum class Kind : std::uint8_t { Ident, Empty, Boundary, Bar, Star, LParen, RParen, End };
    Kind kind;
    std::string text;
    std::size_t column;
};

bool is_operator(char ch)
{
    return ch == '(' || ch == ')' || ch == '|' || ch == '*' || ch == '^';
}

std::vector<Token> tokenize(std::string_view text)
{
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text.size()) {
        char ch = text[i];
        if (std::isspace(static_cast<unsigned char>(ch))) {
            ++i;
            continue;
        }
        std::size_t col = i + 1;
        if (is_operator(ch)) {
            Token::Kind k = ch == '(' ? Token::Kind::LParen
                          : ch == ')' ? Token::Kind::RParen
                          : ch == '|' ? Token::Kind::Bar
                          : ch == '*' ? Token::Kind::Star
                                      : Token::Kind::Boundary;
            out.push_back({k, std::string(1, ch), col});
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])) &&
               !is_operator(text[j]))
            ++j;
        std::string word(text.substr(i, j - i));
        out.push_back({word == "_" ? Token::Kind::Empty : Token::Kind::Ident, word, col});
        i = j;
    }
    out.push_back({Token::Kind::End, "", text.size() + 1});
    return out;
}

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    RegexNode parse()
    {
        auto node = alternation();
        if (peek().kind != Token::Kind::End)
            throw RegexError("unexpected '" + peek().text + "'", peek().column);
        return node;
    }

private:
    const Token& peek() const { return tokens_[pos_]; }

    RegexNode alternation()
    {
        std::size_t col = peek().column;
        std::vector<RegexNode> alts{concatenation()};
        while (peek().kind == Token::Kind::Bar) {
            ++pos_;
            alts.push_back(concatenation());
        }
        if (alts.size() == 1)
            return std::move(alts.front());
        return RegexNode{RegexNode::Kind::Alt, {}, col, std::move(alts)};
    }

    RegexNode concatenation()
    {
        std::size_t col = peek().column;
        std::vector<RegexNode> items;
        for (;;) {
            auto k = peek().kind;
            if (k == Token::Kind::End || k == Token::Kind::Bar || k == Token::Kind::RParen)
                break;
            items.push_back(postfix());
        }
        if (items.empty())
            return RegexNode{RegexNode::Kind::Empty, {}, col, {}};
        if (items.size() == 1)
            return std::move(items.front());
        return RegexNode{RegexNode::Kind::Concat, {}, col, std::move(items)};
    }

    RegexNode postfix()
    {
        auto node = atom();
        while (peek().kind == Token::Kind::Star) {
            std::size_t col = peek().column;
            ++pos_;
            node = RegexNode{RegexNode::Kind::Star, {}, col, {std::move(node)}};
        }
        return node;
    }

    RegexNode atom()
    {
        const Token& t = peek();
        switch (t.kind) {
        case Token::Kind::Ident:
            ++pos_;
            return RegexNode{RegexNode::Kind::Symbol, t.text, t.column, {}};
        case Token::Kind::Empty:
            ++pos_;
            return RegexNode{RegexNode::Kind::Empty, {}, t.column, {}};
        case Token::Kind::Boundary:
            ++pos_;
            return RegexNode{RegexNode::Kind::Boundary, {}, t.column, {}};
        case Token::Kind::LParen: {
            ++pos_;
            auto inner = alternation();
            if (peek().kind != Token::Kind::RParen)
                throw RegexError("expected ')'", peek().column);
            ++pos_;
            return inner;
        }
        case Token::Kind::Star:
            throw RegexError("'*' without operand", t.column);
        default:
            throw RegexError("unexpected '" + t.text + "'", t.column);
        }
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

const RegexNode* find_boundary(const RegexNode& n)
{
    if (n.kind == RegexNode::Kind::Boundary)
        return &n;
    for (const auto& c : n.children)
        if (auto b = find_boundary(c))
            return b;
    return nullptr;
}

std::size_t count_boundaries(const RegexNode& n)
{
    std::size_t k = n.kind == RegexNode::Kind::Boundary ? 1 : 0;
    for (const auto& c : n.children)
        k += count_boundaries(c);
    return k;
}

void check_alternative(const RegexNode& alt)
{
    if (alt.kind == RegexNode::Kind::Boundary)
        return;
    std::size_t direct = 0;
    if (alt.kind == RegexNode::Kind::Concat)
        for (const auto& c : alt.children) {
            if (c.kind == RegexNode::Kind::Boundary)
                ++direct;
            else if (auto b = find_boundary(c))
                throw RegexError("'^' must not be nested", b->column);
        }
    else if (auto b = find_boundary(alt))
        throw RegexError("'^' must not be nested", b->column);
    if (direct == 0)
        throw RegexError("alternative without '^'", alt.column);
    if (direct > 1) {
        std::size_t seen = 0;
        for (const auto& c : alt.children)
            if (c.kind == RegexNode::Kind::Boundary && ++seen == 2)
                throw RegexError("more than one '^' in an alternative", c.column);
    }
}

void check_boundaries(const RegexNode& root, RegexMode mode)
{
    if (mode == RegexMode::Plain) {
        if (auto b = find_boundary(root))
            throw RegexError("'^' is not allowed here", b->column);
        return;
    }
    if (root.kind == RegexNode::Kind::Alt)
        for (const auto& alt : root.children)
            check_alternative(alt);
    else
        check_alternative(root);
}

bool needs_parens(const RegexNode& child, RegexNode::Kind parent)
{
    using K = RegexNode::Kind;
    switch (parent) {
    case K::Star: return child.kind == K::Concat || child.kind == K::Alt || child.kind == K::Star;
    case K::Concat: return child.kind == K::Concat || child.kind == K::Alt;
    case K::Alt: return child.kind == K::Alt;
    default: return false;
    }
}

void print_into(const RegexNode& n, std::string& out)
{
    auto child = [&](const RegexNode& c) {
        if (needs_parens(c, n.kind)) {
            out += '(';
            print_into(c, out);
            out += ')';
        } else {
            print_into(c, out);
        }
    };
    switch (n.kind) {
    case RegexNode::Kind::Symbol: out += n.name; break;
    case RegexNode::Kind::Empty: out += '_'; break;
    case RegexNode::Kind::Boundary: out += '^'; break;
    case RegexNode::Kind::Star:
        child(n.children.front());
        out += '*';
        break;
    case RegexNode::Kind::Concat:
        for (std::size_t i = 0; i < n.children.size(); ++i) {
            if (i)
                out += ' ';
            child(n.children[i]);
        }
        break;
    case RegexNode::Kind::Alt:
        for (std::size_t i = 0; i < n.children.size(); ++i) {
            if (i)
                out += " | ";
            child(n.children[i]);
        }
        break;
    }
}

// Glushkov construction. Positions are Symbol and Boundary leaves.
struct Glushkov {
    struct Position {
        bool boundary = false;
        SymbolId symbol = 0;
        bool upper = false;
    };
    struct Info {
        bool nullable;
        std::set<std::size_t> first, last;
    };

    const UpdsSpec& spec;
    std::vector<Position> positions;
    std::vector<std::set<std::size_t>> follow;

    Info visit(const RegexNode& n, bool upper)
    {
        using K = RegexNode::Kind;
        switch (n.kind) {
        case K::Empty: return {true, {}, {}};
        case K::Symbol:
        case K::Boundary: {
            Position pos;
            pos.boundary = n.kind == K::Boundary;
            if (!pos.boundary) {
                auto s = spec.find_symbol(n.name);
                if (!s)
                    throw RegexError("undeclared symbol '" + n.name + "'", n.column);
                pos.symbol = *s;
            }
            pos.upper = upper;
            positions.push_back(pos);
            follow.emplace_back();
            std::size_t id = positions.size() - 1;
            return {false, {id}, {id}};
        }
        case K::Star: {
            auto in = visit(n.children.front(), upper);
            for (auto l : in.last)
                follow[l].insert(in.first.begin(), in.first.end());
            return {true, in.first, in.last};
        }
        case K::Alt: {
            Info out{false, {}, {}};
            for (const auto& c : n.children) {
                auto in = visit(c, upper);
                out.nullable = out.nullable || in.nullable;
                out.first.insert(in.first.begin(), in.first.end());
                out.last.insert(in.last.begin(), in.last.end());
            }
            return out;
        }
        case K::Concat: {
            Info out{true, {}, {}};
            bool side = upper;
            for (const auto& c : n.children) {
                if (c.kind == K::Boundary)
                    side = false;
                auto in = visit(c, side);
                for (auto l : out.last)
                    follow[l].insert(in.first.begin(), in.first.end());
                if (out.nullable)
                    out.first.insert(in.first.begin(), in.first.end());
                if (in.nullable)
                    out.last.insert(in.last.begin(), in.last.end());
                else
                    out.last = in.last;
                out.nullable = out.nullable && in.nullable;
            }
            return out;
        }
        }
        return {true, {}, {}};
    }

    // Alternatives that contain a boundary start on the upper side.
    Info visit_root(const RegexNode& root, bool boundary_mode)
    {
        if (!boundary_mode)
            return visit(root, false);
        if (root.kind == RegexNode::Kind::Alt) {
            Info out{false, {}, {}};
            for (const auto& c : root.children) {
                auto in = visit(c, true);
                out.nullable = out.nullable || in.nullable;
                out.first.insert(in.first.begin(), in.first.end());
                out.last.insert(in.last.begin(), in.last.end());
            }
            return out;
        }
        return visit(root, true);
    }
};

// Builds the automaton with node 0 as initial and node i+1 for position i.
// Boundary positions are bypassed: reading through them costs nothing.
template <typename AddNode, typename AddEdge, typename SetFinal>
void emit(const Glushkov& g, const Glushkov::Info& root, AddNode add_node, AddEdge add_edge,
          SetFinal set_final)
{
    const auto n = g.positions.size();
    std::vector<std::size_t> node_of(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        if (!g.positions[i].boundary)
            node_of[i] = add_node(g.positions[i]);

    // Targets reachable from a set of positions, looking through boundaries.
    auto targets = [&](const std::set<std::size_t>& direct) {
        std::set<std::size_t> out;
        for (auto j : direct) {
            if (g.positions[j].boundary)
                out.insert(g.follow[j].begin(), g.follow[j].end());
            else
                out.insert(j);
        }
        return out;
    };
    auto is_final = [&](const std::set<std::size_t>& direct) {
        for (auto j : direct)
            if (g.positions[j].boundary && root.last.contains(j))
                return true;
        return false;
    };

    if (root.nullable || is_final(root.first))
        set_final(0);
    for (auto j : targets(root.first))
        add_edge(0, g.positions[j], node_of[j]);
    for (std::size_t i = 0; i < n; ++i) {
        if (g.positions[i].boundary)
            continue;
        if (root.last.contains(i) || is_final(g.follow[i]))
            set_final(node_of[i]);
        for (auto j : targets(g.follow[i]))
            add_edge(node_of[i], g.positions[j], node_of[j]);
    }
}

} // namespace

RegexNode parse_regex(std::string_view text, RegexMode mode)
{
    auto root = Parser(tokenize(text)).parse();
    check_boundaries(root, mode);
    return root;
}

std::string print_regex(const RegexNode& node)
{
    std::string out;
    print_into(node, out);
    return out;
}

fsa::ZonedNfa compile_regex(const UpdsSpec& spec, const RegexNode& node)
{
    check_boundaries(node, RegexMode::Boundary);
    Glushkov g{spec, {}, {}};
    auto root = g.visit_root(node, true);
    fsa::ZonedNfa z;
    z.add_node(fsa::Zone::Upper, true);
    emit(
        g, root,
        [&](const Glushkov::Position& p) {
            return z.add_node(p.upper ? fsa::Zone::Upper : fsa::Zone::Lower);
        },
        [&](std::size_t from, const Glushkov::Position& p, std::size_t to) {
            z.add_edge(static_cast<fsa::NodeId>(from),
                       p.upper ? fsa::barred(p.symbol) : fsa::plain(p.symbol),
                       static_cast<fsa::NodeId>(to));
        },
        [&](std::size_t n) { z.nfa.set_final(static_cast<fsa::NodeId>(n)); });
    return z;
}

fsa::ZonedNfa compile_regex(const UpdsSpec& spec, std::string_view text)
{
    return compile_regex(spec, parse_regex(text));
}

fsa::Nfa compile_plain_regex(const UpdsSpec& spec, const RegexNode& node)
{
    check_boundaries(node, RegexMode::Plain);
    Glushkov g{spec, {}, {}};
    auto root = g.visit_root(node, false);
    fsa::Nfa nfa;
    nfa.add_node(true);
    emit(
        g, root, [&](const Glushkov::Position&) { return nfa.add_node(); },
        [&](std::size_t from, const Glushkov::Position& p, std::size_t to) {
            nfa.add_edge(static_cast<fsa::NodeId>(from), p.symbol, static_cast<fsa::NodeId>(to));
        },
        [&](std::size_t n) { nfa.set_final(static_cast<fsa::NodeId>(n)); });
    return nfa;
}

} // namespace upds
