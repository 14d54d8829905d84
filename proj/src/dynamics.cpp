#include "lpa/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace lpa {

void validate_action(const FiniteAction& a) {
    validate_group(a.group);
    if (a.point_count == 0) {
        throw Error(ErrorKind::InvalidArgument, "action needs a point");
    }
    const std::size_t n = a.group.order();
    if (a.act.size() != n) {
        throw Error(ErrorKind::InvalidArgument,
                    "action table must cover the group");
    }
    for (const auto& row : a.act) {
        if (row.size() != a.point_count) {
            throw Error(ErrorKind::InvalidArgument,
                        "action table must cover every point");
        }
        for (std::size_t x : row) {
            if (x >= a.point_count) {
                throw Error(ErrorKind::InvalidArgument,
                            "action image out of range");
            }
        }
    }
    for (std::size_t x = 0; x < a.point_count; ++x) {
        if (a.act[a.group.identity][x] != x) {
            throw Error(ErrorKind::InvalidArgument,
                        "identity must act trivially");
        }
    }
    for (std::size_t g = 0; g < n; ++g) {
        for (std::size_t h = 0; h < n; ++h) {
            for (std::size_t x = 0; x < a.point_count; ++x) {
                if (a.act[g][a.act[h][x]] != a.act[a.group.op(g, h)][x]) {
                    throw Error(ErrorKind::InvalidArgument,
                                "action is not compatible with the group law");
                }
            }
        }
    }
}

bool same_action(const FiniteAction& a, const FiniteAction& b) {
    return same_group(a.group, b.group) && a.point_count == b.point_count &&
           a.act == b.act;
}

FiniteAction trivial_action(const FiniteGroup& g, std::size_t points) {
    FiniteAction a;
    a.group = g;
    a.point_count = points;
    std::vector<std::size_t> id(points);
    for (std::size_t x = 0; x < points; ++x) id[x] = x;
    a.act.assign(g.order(), id);
    validate_action(a);
    return a;
}

FiniteAction translation_action(const FiniteGroup& g) {
    FiniteAction a;
    a.group = g;
    a.point_count = g.order();
    a.act.assign(g.order(), std::vector<std::size_t>(g.order(), 0));
    for (std::size_t s = 0; s < g.order(); ++s) {
        for (std::size_t x = 0; x < g.order(); ++x) {
            a.act[s][x] = g.op(s, x);
        }
    }
    validate_action(a);
    return a;
}

void validate_crossed(const CrossedElement& f) {
    validate_action(f.action);
    if (f.values.size() != f.action.group.order()) {
        throw Error(ErrorKind::DimensionMismatch,
                    "crossed element must cover the group");
    }
    for (const auto& row : f.values) {
        if (row.size() != f.action.point_count) {
            throw Error(ErrorKind::DimensionMismatch,
                        "crossed element must cover every point");
        }
    }
}

CrossedElement crossed_unit(const FiniteAction& a) {
    validate_action(a);
    CrossedElement f{a, std::vector<std::vector<cx>>(
                            a.group.order(),
                            std::vector<cx>(a.point_count, cx(0.0, 0.0)))};
    for (std::size_t x = 0; x < a.point_count; ++x) {
        f.values[a.group.identity][x] = cx(1.0, 0.0);
    }
    return f;
}

CrossedElement twisted_convolution(const CrossedElement& f,
                                   const CrossedElement& g) {
    validate_crossed(f);
    validate_crossed(g);
    if (!same_action(f.action, g.action)) {
        throw Error(ErrorKind::ActionMismatch,
                    "twisted convolution needs one common action");
    }
    const FiniteGroup& grp = f.action.group;
    const std::size_t n = grp.order();
    const std::size_t pts = f.action.point_count;
    CrossedElement out{f.action,
                       std::vector<std::vector<cx>>(
                           n, std::vector<cx>(pts, cx(0.0, 0.0)))};
    for (std::size_t s = 0; s < n; ++s) {
        for (std::size_t t = 0; t < n; ++t) {
            const std::size_t rest = grp.op(grp.inverse(t), s);
            const auto& move = f.action.act[grp.inverse(t)];
            for (std::size_t x = 0; x < pts; ++x) {
                out.values[s][x] += f.values[t][x] * g.values[rest][move[x]];
            }
        }
    }
    return out;
}

Operator RegularPair::multiplication(const std::vector<cx>& h) const {
    if (h.size() != action.point_count) {
        throw Error(ErrorKind::DimensionMismatch,
                    "multiplication data must cover every point");
    }
    const std::size_t copies = base_dim / action.point_count;
    Operator out = Operator::zero(space, space);
    for (std::size_t s = 0; s < action.group.order(); ++s) {
        for (std::size_t b = 0; b < base_dim; ++b) {
            const std::size_t x = b / copies;
            const std::size_t idx = s * base_dim + b;
            out.at(idx, idx) = h[action.act[s][x]];
        }
    }
    return out;
}

Operator RegularPair::translation(std::size_t t) const {
    if (t >= action.group.order()) {
        throw Error(ErrorKind::InvalidArgument, "group index out of range");
    }
    Operator out = Operator::zero(space, space);
    for (std::size_t s = 0; s < action.group.order(); ++s) {
        const std::size_t target = action.group.op(t, s);
        for (std::size_t b = 0; b < base_dim; ++b) {
            out.at(target * base_dim + b, s * base_dim + b) = cx(1.0, 0.0);
        }
    }
    return out;
}

RegularPair regular_pair(const FiniteAction& action, std::size_t base_rep_dim,
                         Exponent p) {
    validate_action(action);
    std::size_t base = base_rep_dim == 0 ? action.point_count : base_rep_dim;
    if (base % action.point_count != 0) {
        throw Error(ErrorKind::InvalidArgument,
                    "seed dimension must be a multiple of the point count");
    }
    RegularPair pair;
    pair.action = action;
    pair.base_dim = base;
    pair.p = p;
    pair.space = WeightedSpace::unit(action.group.order() * base);
    return pair;
}

Operator integrated_form(const RegularPair& pair, const CrossedElement& f) {
    validate_crossed(f);
    if (!same_action(pair.action, f.action)) {
        throw Error(ErrorKind::ActionMismatch,
                    "element and pair use different actions");
    }
    Operator out = Operator::zero(pair.space, pair.space);
    for (std::size_t s = 0; s < pair.action.group.order(); ++s) {
        out = out.add(pair.multiplication(f.values[s]).mul(pair.translation(s)));
    }
    return out;
}

NormEstimate reduced_norm(const CrossedElement& f, Exponent p,
                          const SearchConfig& cfg) {
    validate_crossed(f);
    const RegularPair pair = regular_pair(f.action, 0, p);
    return opnorm(integrated_form(pair, f), p, cfg);
}

int letter_order(CantorLetter l) { return l == CantorLetter::A ? 2 : 3; }

void validate_alternating(const AlternatingWord& x) {
    for (std::size_t k = 0; k + 1 < x.letters.size(); ++k) {
        if (letter_order(x.letters[k]) == letter_order(x.letters[k + 1])) {
            throw Error(ErrorKind::InvalidArgument,
                        "adjacent letters must come from different factors");
        }
    }
}

namespace {

// One generator, no depth precondition beyond a first letter to read.
AlternatingWord step_act(CantorLetter g, const AlternatingWord& x) {
    if (x.letters.empty()) {
        throw Error(ErrorKind::TruncationUnderflow,
                    "action needs the first letter of a fully truncated word");
    }
    const CantorLetter head = x.letters.front();
    AlternatingWord out;
    if (letter_order(g) != letter_order(head)) {
        out.letters.reserve(x.letters.size() + 1);
        out.letters.push_back(g);
        out.letters.insert(out.letters.end(), x.letters.begin(),
                           x.letters.end());
        return out;
    }
    if (letter_order(g) == 2) {
        // a . a = e: shift.
        out.letters.assign(x.letters.begin() + 1, x.letters.end());
        return out;
    }
    const int exp_g = g == CantorLetter::B ? 1 : 2;
    const int exp_head = head == CantorLetter::B ? 1 : 2;
    const int merged = (exp_g + exp_head) % 3;
    if (merged == 0) {
        out.letters.assign(x.letters.begin() + 1, x.letters.end());
        return out;
    }
    out.letters = x.letters;
    out.letters.front() = merged == 1 ? CantorLetter::B : CantorLetter::B2;
    return out;
}

}  // namespace

AlternatingWord cantor_act(CantorLetter g, const AlternatingWord& x) {
    validate_alternating(x);
    if (x.depth() < 2) {
        throw Error(ErrorKind::InvalidArgument,
                    "action point needs depth at least two");
    }
    return step_act(g, x);
}

AlternatingWord cantor_act_word(const std::vector<CantorLetter>& word,
                                const AlternatingWord& x) {
    validate_alternating(x);
    if (x.depth() < 2) {
        throw Error(ErrorKind::InvalidArgument,
                    "action point needs depth at least two");
    }
    AlternatingWord cur = x;
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        cur = step_act(*it, cur);
    }
    return cur;
}

std::vector<CantorLetter> parse_cantor_word(const std::string& text) {
    std::vector<CantorLetter> word;
    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (c == ' ' || c == '\t') {
            ++i;
            continue;
        }
        if (c == 'a' || c == 'A') {
            word.push_back(CantorLetter::A);
            ++i;
            continue;
        }
        if (c == 'b' || c == 'B') {
            ++i;
            bool squared = false;
            if (i < text.size() && text[i] == '^') ++i;
            if (i < text.size() && text[i] == '2') {
                squared = true;
                ++i;
            }
            word.push_back(squared ? CantorLetter::B2 : CantorLetter::B);
            continue;
        }
        throw Error(ErrorKind::InvalidArgument,
                    std::string("unexpected character '") + c + "' in word");
    }
    if (word.empty()) {
        throw Error(ErrorKind::InvalidArgument, "word must be nontrivial");
    }
    for (std::size_t k = 0; k + 1 < word.size(); ++k) {
        if (letter_order(word[k]) == letter_order(word[k + 1])) {
            throw Error(ErrorKind::InvalidArgument,
                        "word must be reduced: adjacent letters from one "
                        "factor");
        }
    }
    return word;
}

std::string cantor_word_to_string(const std::vector<CantorLetter>& word) {
    std::string text;
    for (CantorLetter l : word) {
        switch (l) {
            case CantorLetter::A: text += "a"; break;
            case CantorLetter::B: text += "b"; break;
            case CantorLetter::B2: text += "b^2"; break;
        }
    }
    return text;
}

std::vector<AlternatingWord> enumerate_alternating_words(std::size_t depth) {
    std::vector<AlternatingWord> words;
    AlternatingWord scratch;
    const auto recurse = [&](auto&& self, std::size_t remaining) -> void {
        if (remaining == 0) {
            words.push_back(scratch);
            return;
        }
        const bool first = scratch.letters.empty();
        const int prev =
            first ? 0 : letter_order(scratch.letters.back());
        if (first || prev == 3) {
            scratch.letters.push_back(CantorLetter::A);
            self(self, remaining - 1);
            scratch.letters.pop_back();
        }
        if (first || prev == 2) {
            for (CantorLetter l : {CantorLetter::B, CantorLetter::B2}) {
                scratch.letters.push_back(l);
                self(self, remaining - 1);
                scratch.letters.pop_back();
            }
        }
    };
    recurse(recurse, depth);
    return words;
}

namespace {

std::size_t common_prefix(const AlternatingWord& x, const AlternatingWord& y) {
    const std::size_t limit = std::min(x.depth(), y.depth());
    std::size_t k = 0;
    while (k < limit && x.letters[k] == y.letters[k]) ++k;
    return k;
}

}  // namespace

OrderCheckReport order_check(std::size_t depth) {
    if (depth < 3) {
        throw Error(ErrorKind::InvalidArgument,
                    "order check needs depth at least three");
    }
    OrderCheckReport rep;
    rep.depth = depth;
    rep.a_squared_identity = true;
    rep.b_cubed_identity = true;
    rep.min_prefix_a = depth;
    rep.min_prefix_b = depth;
    const std::vector<CantorLetter> aa{CantorLetter::A, CantorLetter::A};
    const std::vector<CantorLetter> bbb{CantorLetter::B, CantorLetter::B,
                                        CantorLetter::B};
    for (const AlternatingWord& x : enumerate_alternating_words(depth)) {
        ++rep.word_count;
        const AlternatingWord ya = cantor_act_word(aa, x);
        const std::size_t common_a = std::min(x.depth(), ya.depth());
        if (common_prefix(x, ya) < common_a) rep.a_squared_identity = false;
        rep.min_prefix_a = std::min(rep.min_prefix_a, common_a);
        const AlternatingWord yb = cantor_act_word(bbb, x);
        const std::size_t common_b = std::min(x.depth(), yb.depth());
        if (common_prefix(x, yb) < common_b) rep.b_cubed_identity = false;
        rep.min_prefix_b = std::min(rep.min_prefix_b, common_b);
    }
    return rep;
}

CensusResult fixed_point_census(const std::vector<CantorLetter>& g,
                                std::size_t depth) {
    if (g.empty()) {
        throw Error(ErrorKind::InvalidArgument, "word must be nontrivial");
    }
    if (depth < 2) {
        throw Error(ErrorKind::InvalidArgument,
                    "census needs depth at least two");
    }
    CensusResult res;
    for (const AlternatingWord& x : enumerate_alternating_words(depth)) {
        ++res.word_count;
        AlternatingWord y;
        try {
            y = cantor_act_word(g, x);
        } catch (const Error& err) {
            if (err.kind == ErrorKind::TruncationUnderflow) {
                ++res.truncated_count;
                continue;
            }
            throw;
        }
        const std::size_t common = std::min(x.depth(), y.depth());
        if (common_prefix(x, y) == common) ++res.fixed_count;
    }
    res.fraction = res.word_count == 0
                       ? 0.0
                       : static_cast<double>(res.fixed_count) /
                             static_cast<double>(res.word_count);
    return res;
}

CoeReport coe_verify(const CoeData& data, const FiniteAction& sigma,
                     const FiniteAction& rho) {
    validate_action(sigma);
    validate_action(rho);
    if (sigma.point_count != rho.point_count) {
        throw Error(ErrorKind::InvalidArgument,
                    "orbit equivalence needs equinumerous point sets");
    }
    const std::size_t pts = sigma.point_count;
    if (data.theta.size() != pts) {
        throw Error(ErrorKind::CoverageGap,
                    "theta must be defined on every point");
    }
    std::vector<std::ptrdiff_t> theta_inv(pts, -1);
    for (std::size_t x = 0; x < pts; ++x) {
        const std::size_t y = data.theta[x];
        if (y >= pts || theta_inv[y] >= 0) {
            throw Error(ErrorKind::InvalidArgument, "theta is not a bijection");
        }
        theta_inv[y] = static_cast<std::ptrdiff_t>(x);
    }
    char msg[128];
    if (data.c_h.size() != sigma.group.order()) {
        std::snprintf(msg, sizeof msg,
                      "c_H covers %zu of %zu group elements", data.c_h.size(),
                      sigma.group.order());
        throw Error(ErrorKind::CoverageGap, msg);
    }
    for (const auto& row : data.c_h) {
        if (row.size() != pts) {
            throw Error(ErrorKind::CoverageGap,
                        "c_H must be defined at every point");
        }
        for (std::size_t h : row) {
            if (h >= rho.group.order()) {
                throw Error(ErrorKind::InvalidArgument,
                            "c_H value out of range");
            }
        }
    }
    if (data.c_g.size() != rho.group.order()) {
        std::snprintf(msg, sizeof msg,
                      "c_G covers %zu of %zu group elements", data.c_g.size(),
                      rho.group.order());
        throw Error(ErrorKind::CoverageGap, msg);
    }
    for (const auto& row : data.c_g) {
        if (row.size() != pts) {
            throw Error(ErrorKind::CoverageGap,
                        "c_G must be defined at every point");
        }
        for (std::size_t g : row) {
            if (g >= sigma.group.order()) {
                throw Error(ErrorKind::InvalidArgument,
                            "c_G value out of range");
            }
        }
    }

    CoeReport rep;
    for (std::size_t g = 0; g < sigma.group.order(); ++g) {
        for (std::size_t x = 0; x < pts; ++x) {
            const std::size_t lhs = data.theta[sigma.act[g][x]];
            const std::size_t rhs = rho.act[data.c_h[g][x]][data.theta[x]];
            if (lhs != rhs) {
                std::snprintf(msg, sizeof msg,
                              "forward identity fails at g=%zu x=%zu", g, x);
                rep.violations.emplace_back(msg);
            }
        }
    }
    for (std::size_t h = 0; h < rho.group.order(); ++h) {
        for (std::size_t y = 0; y < pts; ++y) {
            const auto lhs =
                theta_inv[rho.act[h][y]];
            const auto rhs = static_cast<std::ptrdiff_t>(
                sigma.act[data.c_g[h][y]]
                         [static_cast<std::size_t>(theta_inv[y])]);
            if (lhs != rhs) {
                std::snprintf(msg, sizeof msg,
                              "backward identity fails at h=%zu y=%zu", h, y);
                rep.violations.emplace_back(msg);
            }
        }
    }
    rep.pass = rep.violations.empty();
    return rep;
}

}  // namespace lpa
