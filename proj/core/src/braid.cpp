#include "polybraid/braid.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace polybraid::braid {

using freegrp::FreeWord;

BraidWord::BraidWord(int n, std::vector<int> ls) : strands(n), letters(std::move(ls)) {
    if (n < 1) throw Error("BadStrandCount", "braid needs at least one strand");
    for (int l : letters)
        if (l == 0 || std::abs(l) > n - 1)
            throw Error("LetterOutOfRange", "braid letter index outside 1..n-1");
}

BraidWord BraidWord::inverse() const {
    BraidWord out;
    out.strands = strands;
    out.letters.reserve(letters.size());
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) out.letters.push_back(-*it);
    return out;
}

BraidWord BraidWord::operator*(const BraidWord& o) const {
    if (strands != o.strands) throw Error("StrandMismatch", "braid words on different strand counts");
    BraidWord out;
    out.strands = strands;
    out.letters = letters;
    out.letters.insert(out.letters.end(), o.letters.begin(), o.letters.end());
    return out;
}

BraidWord BraidWord::freely_reduced() const {
    BraidWord out;
    out.strands = strands;
    for (int l : letters) {
        if (!out.letters.empty() && out.letters.back() == -l)
            out.letters.pop_back();
        else
            out.letters.push_back(l);
    }
    return out;
}

Permutation::Permutation(std::vector<int> im) : images(std::move(im)) {
    std::vector<bool> seen(images.size(), false);
    for (int v : images) {
        if (v < 0 || v >= static_cast<int>(images.size()) || seen[static_cast<size_t>(v)])
            throw Error("NotAPermutation", "image list is not a bijection");
        seen[static_cast<size_t>(v)] = true;
    }
}

Permutation Permutation::identity(int n) {
    std::vector<int> im(static_cast<size_t>(n));
    std::iota(im.begin(), im.end(), 0);
    Permutation p;
    p.images = std::move(im);
    return p;
}

Permutation Permutation::transposition(int n, int i, int j) {
    Permutation p = identity(n);
    std::swap(p.images[static_cast<size_t>(i)], p.images[static_cast<size_t>(j)]);
    return p;
}

bool Permutation::is_identity() const {
    for (size_t i = 0; i < images.size(); ++i)
        if (images[i] != static_cast<int>(i)) return false;
    return true;
}

Permutation Permutation::inverse() const {
    Permutation p = identity(degree());
    for (size_t i = 0; i < images.size(); ++i) p.images[static_cast<size_t>(images[i])] = static_cast<int>(i);
    return p;
}

Permutation Permutation::then(const Permutation& o) const {
    if (degree() != o.degree()) throw Error("MixedDegrees", "composing permutations of different degree");
    Permutation p;
    p.images.resize(images.size());
    for (size_t i = 0; i < images.size(); ++i) p.images[i] = o.images[static_cast<size_t>(images[i])];
    return p;
}

std::vector<std::vector<int>> Permutation::cycles() const {
    std::vector<std::vector<int>> out;
    std::vector<bool> seen(images.size(), false);
    for (size_t i = 0; i < images.size(); ++i) {
        if (seen[i] || images[i] == static_cast<int>(i)) continue;
        std::vector<int> cyc;
        int j = static_cast<int>(i);
        while (!seen[static_cast<size_t>(j)]) {
            seen[static_cast<size_t>(j)] = true;
            cyc.push_back(j);
            j = images[static_cast<size_t>(j)];
        }
        out.push_back(std::move(cyc));
    }
    return out;
}

int Permutation::order() const {
    int ord = 1;
    for (const auto& c : cycles()) ord = static_cast<int>(std::lcm(ord, static_cast<long long>(c.size())));
    return ord;
}

Permutation tau(const BraidWord& b) {
    // pos[k] = start position of the strand currently at position k; letters
    // act left to right, each swapping two adjacent positions.
    std::vector<int> pos(static_cast<size_t>(b.strands));
    std::iota(pos.begin(), pos.end(), 0);
    for (int l : b.letters) {
        const int i = std::abs(l) - 1;
        std::swap(pos[static_cast<size_t>(i)], pos[static_cast<size_t>(i + 1)]);
    }
    // The strand starting at position j ends at the k with pos[k] = j.
    Permutation q = Permutation::identity(b.strands);
    for (int k = 0; k < b.strands; ++k) q.images[static_cast<size_t>(pos[static_cast<size_t>(k)])] = k;
    return q;
}

long long exponent_sum(const BraidWord& b) {
    long long s = 0;
    for (int l : b.letters) s += (l > 0) ? 1 : -1;
    return s;
}

namespace {

/// Append a letter to a reduced word buffer.
inline void push_reduced(std::vector<int>& w, int letter) {
    if (!w.empty() && w.back() == -letter)
        w.pop_back();
    else
        w.push_back(letter);
}

/// One Artin generator substitution applied to a reduced word.
/// sigma_i:   x_i -> x_i x_{i+1} x_i^{-1},  x_{i+1} -> x_i
/// sigma_i^-: x_i -> x_{i+1},               x_{i+1} -> x_{i+1}^{-1} x_i x_{i+1}
std::vector<int> apply_artin_letter(const std::vector<int>& w, int letter) {
    const int i = std::abs(letter);
    std::vector<int> out;
    out.reserve(w.size() * 2 + 4);
    for (int l : w) {
        const int g = std::abs(l);
        if (g != i && g != i + 1) {
            push_reduced(out, l);
            continue;
        }
        if (letter > 0) {
            if (g == i) {
                if (l > 0) {
                    push_reduced(out, i);
                    push_reduced(out, i + 1);
                    push_reduced(out, -i);
                } else {
                    push_reduced(out, i);
                    push_reduced(out, -(i + 1));
                    push_reduced(out, -i);
                }
            } else {
                push_reduced(out, l > 0 ? i : -i);
            }
        } else {
            if (g == i) {
                push_reduced(out, l > 0 ? i + 1 : -(i + 1));
            } else {
                if (l > 0) {
                    push_reduced(out, -(i + 1));
                    push_reduced(out, i);
                    push_reduced(out, i + 1);
                } else {
                    push_reduced(out, -(i + 1));
                    push_reduced(out, -i);
                    push_reduced(out, i + 1);
                }
            }
        }
    }
    return out;
}

} // namespace

FreeAutomorphism artin_action(const BraidWord& b, std::size_t budget) {
    FreeAutomorphism phi;
    phi.rank = b.strands;
    std::size_t total = 0;
    for (int j = 1; j <= b.strands; ++j) {
        std::vector<int> w{j};
        for (auto it = b.letters.rbegin(); it != b.letters.rend(); ++it) {
            w = apply_artin_letter(w, *it);
            total += w.size();
            if (total > budget) throw Error("WordBlowup", "Artin action exceeded the symbol budget");
        }
        phi.images.push_back(FreeWord(b.strands, std::move(w)));
    }
    return phi;
}

bool artin_is_trivial(const BraidWord& b, std::size_t budget) {
    const FreeAutomorphism phi = artin_action(b, budget);
    for (int j = 1; j <= b.strands; ++j) {
        const FreeWord& w = phi.images[static_cast<size_t>(j - 1)];
        if (w.letters.size() != 1 || w.letters[0] != j) return false;
    }
    return true;
}

StrandAnalysis strand_analysis(const std::vector<Permutation>& perms) {
    StrandAnalysis out;
    if (perms.empty()) throw Error("EmptyInput", "strand_analysis needs at least one permutation");
    const int n = perms[0].degree();
    for (const auto& p : perms)
        if (p.degree() != n) throw Error("MixedDegrees", "permutations of different degree");
    out.pure = true;
    for (int i = 0; i < n; ++i) out.common_fixed.insert(i);
    for (const auto& p : perms) {
        if (!p.is_identity()) out.pure = false;
        for (auto it = out.common_fixed.begin(); it != out.common_fixed.end();) {
            if (p.apply(*it) != *it)
                it = out.common_fixed.erase(it);
            else
                ++it;
        }
    }
    return out;
}

std::map<std::string, BraidWord> b_commutator_dictionary(int n) {
    if (n != 3 && n != 4) throw Error("UnsupportedN", "commutator dictionary available for n = 3, 4");
    std::map<std::string, BraidWord> d;
    d.emplace("u", BraidWord(n, {2, -1}));
    d.emplace("v", BraidWord(n, {1, 2, -1, -1}));
    if (n == 4) {
        d.emplace("a", BraidWord(4, {3, -1}));
        // b = u a u^{-1}, freely reduced.
        d.emplace("b", (d.at("u") * d.at("a") * d.at("u").inverse()).freely_reduced());
    }
    return d;
}

long long IntMatrix2::det() const { return e[0] * e[3] - e[1] * e[2]; }

IntMatrix2 IntMatrix2::operator*(const IntMatrix2& o) const {
    auto mul = [](long long a, long long b) {
        long long r;
        if (__builtin_mul_overflow(a, b, &r)) throw Error("Overflow", "2x2 integer product overflow");
        return r;
    };
    auto add = [](long long a, long long b) {
        long long r;
        if (__builtin_add_overflow(a, b, &r)) throw Error("Overflow", "2x2 integer sum overflow");
        return r;
    };
    return IntMatrix2{{add(mul(e[0], o.e[0]), mul(e[1], o.e[2])), add(mul(e[0], o.e[1]), mul(e[1], o.e[3])),
                       add(mul(e[2], o.e[0]), mul(e[3], o.e[2])), add(mul(e[2], o.e[1]), mul(e[3], o.e[3]))}};
}

IntMatrix2 IntMatrix2::operator-() const { return IntMatrix2{{-e[0], -e[1], -e[2], -e[3]}}; }

namespace {

/// Conjugation tables from the eight B_4' relations, as words over {a=1, b=2}.
///   u a u^-1 = b            u^-1 a u = a b^-1 a^2
///   u b u^-1 = b^2 a^-1 b   u^-1 b u = a
///   v a v^-1 = a^-1 b       v^-1 a v = a b^-1 a^3
///   v b v^-1 = (a^-1 b)^3 a^-2 b
///                           v^-1 b v = a b^-1 a^4
const std::vector<int>& conj_image(char gen, int target) {
    static const std::vector<int> u_a{2};
    static const std::vector<int> u_b{2, 2, -1, 2};
    static const std::vector<int> U_a{1, -2, 1, 1};
    static const std::vector<int> U_b{1};
    static const std::vector<int> v_a{-1, 2};
    static const std::vector<int> v_b{-1, 2, -1, 2, -1, 2, -1, -1, 2};
    static const std::vector<int> V_a{1, -2, 1, 1, 1};
    static const std::vector<int> V_b{1, -2, 1, 1, 1, 1};
    switch (gen) {
        case 'u': return target == 1 ? u_a : u_b;
        case 'U': return target == 1 ? U_a : U_b;
        case 'v': return target == 1 ? v_a : v_b;
        case 'V': return target == 1 ? V_a : V_b;
        default: throw Error("BadLetter", "alpha_matrix letters must be u, U, v, V");
    }
}

std::vector<int> conjugate_word(char gen, const std::vector<int>& w, std::size_t budget) {
    std::vector<int> out;
    out.reserve(w.size() * 4);
    for (int l : w) {
        const auto& img = conj_image(gen, std::abs(l));
        if (l > 0) {
            for (int m : img) push_reduced(out, m);
        } else {
            for (auto it = img.rbegin(); it != img.rend(); ++it) push_reduced(out, -*it);
        }
        if (out.size() > budget) throw Error("RewriteBudget", "conjugate rewriting exceeded the budget");
    }
    return out;
}

} // namespace

IntMatrix2 alpha_matrix(const std::string& word, std::size_t budget) {
    std::vector<int> img_a{1};
    std::vector<int> img_b{2};
    // c_{g1...gk}(t) = c_{g1}(c_{g2}(...c_{gk}(t))): fold right to left.
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        const char g = *it;
        if (g == ' ') continue;
        img_a = conjugate_word(g, img_a, budget);
        img_b = conjugate_word(g, img_b, budget);
    }
    auto exps = [](const std::vector<int>& w) {
        long long ea = 0, eb = 0;
        for (int l : w) {
            if (std::abs(l) == 1) ea += (l > 0) ? 1 : -1;
            else eb += (l > 0) ? 1 : -1;
        }
        return std::pair<long long, long long>{ea, eb};
    };
    const auto [a1, b1] = exps(img_a);
    const auto [a2, b2] = exps(img_b);
    // Columns are the images of a and b.
    return IntMatrix2{{a1, a2, b1, b2}};
}

std::vector<Permutation> group_closure(const std::vector<Permutation>& gens) {
    if (gens.empty()) throw Error("EmptyInput", "closure of no generators");
    const int n = gens[0].degree();
    for (const auto& g : gens)
        if (g.degree() != n) throw Error("MixedDegrees", "generators of different degree");
    std::set<std::vector<int>> seen;
    std::vector<Permutation> elems;
    std::deque<Permutation> queue;
    const Permutation id = Permutation::identity(n);
    seen.insert(id.images);
    elems.push_back(id);
    queue.push_back(id);
    while (!queue.empty()) {
        const Permutation p = queue.front();
        queue.pop_front();
        for (const auto& g : gens) {
            Permutation q = p.then(g);
            if (seen.insert(q.images).second) {
                elems.push_back(q);
                queue.push_back(std::move(q));
            }
        }
        if (elems.size() > 5000000) throw Error("ClosureTooLarge", "permutation closure exceeds safety cap");
    }
    return elems;
}

PermGroupAnalysis perm_group_analysis(const std::vector<Permutation>& gens) {
    PermGroupAnalysis out;
    std::vector<Permutation> current = group_closure(gens);
    out.elements = current;
    out.order = current.size();
    out.exponent = 1;
    for (const auto& p : current) out.exponent = std::lcm(out.exponent, static_cast<long long>(p.order()));

    out.derived_series_orders.push_back(current.size());
    while (current.size() > 1) {
        std::vector<Permutation> comms;
        std::set<std::vector<int>> seen;
        for (const auto& g : current)
            for (const auto& h : current) {
                Permutation c = g.then(h).then(g.inverse()).then(h.inverse());
                if (seen.insert(c.images).second) comms.push_back(std::move(c));
            }
        std::vector<Permutation> derived = group_closure(comms);
        if (derived.size() == current.size()) {
            // Perfect group: the series stabilizes above the trivial group.
            break;
        }
        current = std::move(derived);
        out.derived_series_orders.push_back(current.size());
    }
    out.is_solvable = out.derived_series_orders.back() == 1;
    // Perfect: the first derived subgroup is already the whole group, so the
    // loop above stopped without recording a strictly smaller term.
    out.is_perfect = out.order > 1 && out.derived_series_orders.size() == 1;
    return out;
}

} // namespace polybraid::braid
