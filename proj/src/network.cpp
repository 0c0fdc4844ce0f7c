// Copyright (c) allendl contributors.
// SPDX-License-Identifier: Apache-2.0
#include "allendl/network.hpp"

#include <istream>
#include <set>
#include <sstream>

namespace allendl {

Qcn::Qcn(int n) : n_(n) {
    if (n < 0) {
        throw std::invalid_argument("Qcn: negative variable count");
    }
}

void Qcn::check_pair(int i, int j) const {
    if (i < 0 || j < 0 || i >= n_ || j >= n_ || i == j) {
        throw std::out_of_range("Qcn: bad variable pair (" + std::to_string(i) + ", " +
                                std::to_string(j) + ")");
    }
}

Relation Qcn::label(int i, int j) const {
    if (i == j) {
        return Relation::singleton(BaseRelation::eq);
    }
    check_pair(i, j);
    const bool flipped = i > j;
    auto it = labels_.find(flipped ? std::make_pair(j, i) : std::make_pair(i, j));
    if (it == labels_.end()) {
        return Relation::all();
    }
    return flipped ? converse(it->second) : it->second;
}

bool Qcn::has_edge(int i, int j) const {
    check_pair(i, j);
    if (i > j) {
        std::swap(i, j);
    }
    return labels_.contains({i, j});
}

void Qcn::restrict_label(int i, int j, Relation r) {
    check_pair(i, j);
    if (i > j) {
        std::swap(i, j);
        r = converse(r);
    }
    const Relation refined = label(i, j) & r;
    if (refined.is_universal()) {
        labels_.erase({i, j});
    } else {
        labels_[{i, j}] = refined;
    }
}

std::vector<EdgeRef> Qcn::edges() const {
    std::vector<EdgeRef> out;
    out.reserve(labels_.size());
    for (const auto& [key, rel] : labels_) {
        out.push_back(EdgeRef{key.first, key.second});
    }
    return out;
}

bool Qcn::any_empty_label() const {
    for (const auto& [key, rel] : labels_) {
        if (rel.empty()) {
            return true;
        }
    }
    return false;
}

namespace {

// Strips a trailing '#' comment and splits on whitespace, with parens
// treated as separate tokens so "(p m)" and "( p m )" both work.
std::vector<std::string> tokenize(const std::string& line) {
    std::string cleaned;
    for (char c : line) {
        if (c == '#') {
            break;
        }
        if (c == '(' || c == ')') {
            cleaned += ' ';
            cleaned += c;
            cleaned += ' ';
        } else {
            cleaned += c;
        }
    }
    std::istringstream ss(cleaned);
    std::vector<std::string> tokens;
    std::string tok;
    while (ss >> tok) {
        tokens.push_back(tok);
    }
    return tokens;
}

int parse_index(const std::string& tok, int line_no) {
    std::size_t pos = 0;
    int value = 0;
    try {
        value = std::stoi(tok, &pos);
    } catch (const std::exception&) {
        throw ParseError(line_no, "expected a variable index, got '" + tok + "'");
    }
    if (pos != tok.size() || value < 0) {
        throw ParseError(line_no, "expected a variable index, got '" + tok + "'");
    }
    return value;
}

}  // namespace

Qcn parse_qcn(std::istream& in) {
    std::string line;
    int line_no = 0;
    std::optional<Qcn> q;
    bool terminated = false;

    while (std::getline(in, line)) {
        ++line_no;
        const std::vector<std::string> tokens = tokenize(line);
        if (tokens.empty()) {
            continue;
        }
        if (!q) {
            if (tokens.size() != 1) {
                throw ParseError(line_no, "expected the variable count alone on the first line");
            }
            q.emplace(parse_index(tokens[0], line_no));
            continue;
        }
        if (tokens.size() == 1 && tokens[0] == ".") {
            terminated = true;
            break;
        }
        if (tokens.size() < 5 || tokens[2] != "(" || tokens.back() != ")") {
            throw ParseError(line_no, "expected `i j ( tok ... )`");
        }
        const int i = parse_index(tokens[0], line_no);
        const int j = parse_index(tokens[1], line_no);
        if (i >= q->num_variables() || j >= q->num_variables()) {
            throw ParseError(line_no, "variable index out of range (n = " +
                                          std::to_string(q->num_variables()) + ")");
        }
        Relation rel;
        for (std::size_t t = 3; t + 1 < tokens.size(); ++t) {
            const auto b = base_relation_from_token(tokens[t]);
            if (!b) {
                throw ParseError(line_no, "unknown relation token '" + tokens[t] + "'");
            }
            rel.add(*b);
        }
        if (i == j) {
            if (rel == Relation::singleton(BaseRelation::eq)) {
                continue;  // vacuous diagonal entry
            }
            throw ParseError(line_no, "self edge must carry exactly (eq)");
        }
        q->restrict_label(i, j, rel);
    }

    if (!q) {
        throw ParseError(line_no + 1, "empty input, expected a variable count");
    }
    if (!terminated) {
        throw ParseError(line_no + 1, "missing `.` terminator");
    }
    return *q;
}

Qcn parse_qcn(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_qcn(in);
}

std::string serialize_qcn(const Qcn& q) {
    std::ostringstream out;
    out << q.num_variables() << '\n';
    for (const EdgeRef& e : q.edges()) {
        out << e.i << ' ' << e.j << " (" << to_string(q.label(e.i, e.j)) << ")\n";
    }
    out << ".\n";
    return out.str();
}

std::optional<Qcn> algebraic_closure(const Qcn& q, const CompositionTable& table) {
    const int n = q.num_variables();
    // Dense working matrix, kept converse-coherent in both directions.
    std::vector<Relation> m(static_cast<std::size_t>(n) * static_cast<std::size_t>(n),
                            Relation::all());
    auto at = [&m, n](int a, int b) -> Relation& {
        return m[static_cast<std::size_t>(a) * static_cast<std::size_t>(n) +
                 static_cast<std::size_t>(b)];
    };
    for (const EdgeRef& e : q.edges()) {
        const Relation rel = q.label(e.i, e.j);
        if (rel.empty()) {
            return std::nullopt;
        }
        at(e.i, e.j) = rel;
        at(e.j, e.i) = converse(rel);
    }

    // Worklist of normalized pairs, processed in ascending (i, j) order.
    std::set<std::pair<int, int>> queue;
    for (const EdgeRef& e : q.edges()) {
        queue.insert({e.i, e.j});
    }

    auto refine = [&](int a, int b, Relation bound) -> int {
        // returns 1 on change, -1 on empty, 0 otherwise
        const Relation old = at(a, b);
        const Relation next = old & bound;
        if (next == old) {
            return 0;
        }
        if (next.empty()) {
            return -1;
        }
        at(a, b) = next;
        at(b, a) = converse(next);
        queue.insert({std::min(a, b), std::max(a, b)});
        return 1;
    };

    while (!queue.empty()) {
        const auto [i, j] = *queue.begin();
        queue.erase(queue.begin());
        for (int k = 0; k < n; ++k) {
            if (k == i || k == j) {
                continue;
            }
            if (refine(i, k, table.compose(at(i, j), at(j, k))) < 0) {
                return std::nullopt;
            }
            if (refine(j, k, table.compose(at(j, i), at(i, k))) < 0) {
                return std::nullopt;
            }
        }
    }

    Qcn out(n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (!at(i, j).is_universal()) {
                out.restrict_label(i, j, at(i, j));
            }
        }
    }
    return out;
}

}  // namespace allendl
