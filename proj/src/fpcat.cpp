#include "simpcat/fpcat.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <stdexcept>

namespace simpcat {

// ---------------------------------------------------------------------------
// Presentations
// ---------------------------------------------------------------------------

int CatPresentation::object_index(const std::string& name) const {
    for (size_t i = 0; i < objects.size(); ++i)
        if (objects[i] == name) return static_cast<int>(i);
    return -1;
}

int CatPresentation::generator_index(const std::string& name) const {
    for (size_t i = 0; i < generators.size(); ++i)
        if (generators[i].name == name) return static_cast<int>(i);
    return -1;
}

int CatPresentation::word_src(const Word& w, int fallback) const {
    return w.empty() ? fallback : generators[static_cast<size_t>(w.front())].src;
}

int CatPresentation::word_tgt(const Word& w, int fallback) const {
    return w.empty() ? fallback : generators[static_cast<size_t>(w.back())].tgt;
}

bool CatPresentation::composable(const Word& w) const {
    for (int g : w)
        if (g < 0 || g >= static_cast<int>(generators.size())) return false;
    for (size_t i = 0; i + 1 < w.size(); ++i)
        if (generators[static_cast<size_t>(w[i])].tgt != generators[static_cast<size_t>(w[i + 1])].src)
            return false;
    return true;
}

std::string CatPresentation::show_word(const Word& w) const {
    if (w.empty()) return "id";
    std::string out;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) out += "·";
        out += generators[static_cast<size_t>(w[i])].name;
    }
    return out;
}

ValidationReport validate_presentation(const CatPresentation& p) {
    ValidationReport rep;
    auto flag = [&](const std::string& m) {
        rep.ok = false;
        rep.violations.push_back(m);
    };
    std::set<std::string> names;
    for (const Generator& g : p.generators) {
        if (g.src < 0 || g.src >= static_cast<int>(p.objects.size()) || g.tgt < 0 ||
            g.tgt >= static_cast<int>(p.objects.size()))
            flag("generator " + g.name + " has endpoints out of range");
        if (!names.insert(g.name).second) flag("duplicate generator name " + g.name);
    }
    for (size_t i = 0; i < p.relations.size(); ++i) {
        const auto& [u, v] = p.relations[i];
        std::string who = "relation " + std::to_string(i);
        if (!p.composable(u) || !p.composable(v)) {
            flag(who + ": side not composable");
            continue;
        }
        if (u.empty() && v.empty()) continue;
        int su = p.word_src(u, p.word_src(v)), tu = p.word_tgt(u, p.word_tgt(v));
        int sv = p.word_src(v, su), tv = p.word_tgt(v, tu);
        if (su != sv || tu != tv) flag(who + ": sides are not parallel");
        if ((u.empty() || v.empty()) && su != tu) flag(who + ": empty side against a non-endo word");
    }
    return rep;
}

CatPresentation free_category(const std::vector<std::string>& objects,
                              const std::vector<Generator>& arrows) {
    CatPresentation p;
    p.objects = objects;
    p.generators = arrows;
    ValidationReport rep = validate_presentation(p);
    if (!rep.ok) throw std::invalid_argument("free_category: " + rep.violations.front());
    return p;
}

namespace {

std::vector<std::string> unique_names(const std::vector<std::string>& raw, const std::string& prefix) {
    std::set<std::string> seen;
    bool ok = true;
    for (const std::string& s : raw)
        if (s.empty() || !seen.insert(s).second) {
            ok = false;
            break;
        }
    if (ok) return raw;
    std::vector<std::string> out;
    for (size_t i = 0; i < raw.size(); ++i) out.push_back(prefix + std::to_string(i));
    return out;
}

}  // namespace

CatPresentation fundamental_category(const SimplicialSet& X) {
    if (X.cap < 2) throw std::invalid_argument("fundamental_category: needs cap >= 2");
    CatPresentation p;
    {
        std::vector<std::string> raw;
        for (int v = 0; v < X.nd_count(0); ++v) raw.push_back(X.simplex(0, v).label);
        p.objects = unique_names(raw, "v");
    }
    {
        std::vector<std::string> raw;
        for (int e = 0; e < X.nd_count(1); ++e) raw.push_back(X.simplex(1, e).label);
        raw = unique_names(raw, "e");
        for (int e = 0; e < X.nd_count(1); ++e) {
            const auto& faces = X.simplex(1, e).faces;
            // d₁ is the source vertex, d₀ the target
            p.generators.push_back({raw[static_cast<size_t>(e)], faces[1].nd_index, faces[0].nd_index});
        }
    }
    auto edge_word = [](const SimplexRef& r) -> Word {
        if (r.is_degenerate()) return {};
        return {r.nd_index};
    };
    for (int t = 0; t < X.nd_count(2); ++t) {
        const auto& faces = X.simplex(2, t).faces;
        Word lhs = edge_word(faces[1]);
        Word rhs = edge_word(faces[2]);
        Word tail = edge_word(faces[0]);
        rhs.insert(rhs.end(), tail.begin(), tail.end());
        p.relations.emplace_back(std::move(lhs), std::move(rhs));
    }
    return p;
}

// ---------------------------------------------------------------------------
// Rewriting
// ---------------------------------------------------------------------------

bool shortlex_less(const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

namespace {

Word normalize_with(const std::vector<RewriteRule>& rules, Word w) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t pos = 0; pos < w.size() && !changed; ++pos)
            for (const RewriteRule& r : rules) {
                if (pos + r.lhs.size() > w.size()) continue;
                if (!std::equal(r.lhs.begin(), r.lhs.end(), w.begin() + static_cast<long>(pos))) continue;
                Word nw(w.begin(), w.begin() + static_cast<long>(pos));
                nw.insert(nw.end(), r.rhs.begin(), r.rhs.end());
                nw.insert(nw.end(), w.begin() + static_cast<long>(pos + r.lhs.size()), w.end());
                w = std::move(nw);
                changed = true;
                break;
            }
    }
    return w;
}

}  // namespace

Word normalize(const RewriteSystem& rs, Word w) { return normalize_with(rs.rules, std::move(w)); }

RewriteSystem complete_rewriting(const CatPresentation& p, int max_rules, int max_len) {
    RewriteSystem rs;
    std::vector<RewriteRule>& rules = rs.rules;
    bool over = false;
    std::string note;

    auto consider = [&](Word a, Word b) -> bool {
        if (over) return false;
        Word u = normalize_with(rules, std::move(a));
        Word v = normalize_with(rules, std::move(b));
        if (u == v) return false;
        if (shortlex_less(u, v)) std::swap(u, v);
        if (static_cast<int>(u.size()) > max_len) {
            over = true;
            note = "rule length budget exhausted";
            return false;
        }
        rules.push_back({std::move(u), std::move(v)});
        if (static_cast<int>(rules.size()) > max_rules) {
            over = true;
            note = "rule count budget exhausted";
        }
        return true;
    };

    auto interreduce = [&]() {
        bool ch = true;
        while (ch) {
            ch = false;
            for (size_t k = 0; k < rules.size(); ++k) {
                std::vector<RewriteRule> others;
                others.reserve(rules.size() - 1);
                for (size_t j = 0; j < rules.size(); ++j)
                    if (j != k) others.push_back(rules[j]);
                Word u = normalize_with(others, rules[k].lhs);
                Word v = normalize_with(others, rules[k].rhs);
                if (u == rules[k].lhs && v == rules[k].rhs) continue;
                rules.erase(rules.begin() + static_cast<long>(k));
                if (u != v) {
                    if (shortlex_less(u, v)) std::swap(u, v);
                    rules.push_back({std::move(u), std::move(v)});
                }
                ch = true;
                break;
            }
        }
        std::sort(rules.begin(), rules.end(),
                  [](const RewriteRule& a, const RewriteRule& b) {
                      return shortlex_less(a.lhs, b.lhs) ||
                             (a.lhs == b.lhs && shortlex_less(a.rhs, b.rhs));
                  });
        rules.erase(std::unique(rules.begin(), rules.end()), rules.end());
    };

    for (const auto& [u, v] : p.relations) {
        consider(u, v);
        if (over) break;
    }
    if (!over) interreduce();

    int rounds = 0;
    while (!over) {
        if (++rounds > 64) {
            over = true;
            note = "completion round budget exhausted";
            break;
        }
        bool added = false;
        std::vector<RewriteRule> snap = rules;
        for (size_t i = 0; i < snap.size() && !over; ++i)
            for (size_t j = 0; j < snap.size() && !over; ++j) {
                const Word& li = snap[i].lhs;
                const Word& lj = snap[j].lhs;
                int mx = static_cast<int>(std::min(li.size(), lj.size()));
                // proper overlaps: nonempty proper suffix of li = proper prefix of lj
                for (int o = 1; o < mx; ++o) {
                    if (!std::equal(lj.begin(), lj.begin() + o, li.end() - o)) continue;
                    Word left = snap[i].rhs;
                    left.insert(left.end(), lj.begin() + o, lj.end());
                    Word right(li.begin(), li.end() - o);
                    right.insert(right.end(), snap[j].rhs.begin(), snap[j].rhs.end());
                    if (consider(std::move(left), std::move(right))) added = true;
                }
                // containments: lj occurs inside li
                if (lj.size() <= li.size())
                    for (size_t pos = 0; pos + lj.size() <= li.size(); ++pos) {
                        if (i == j && lj.size() == li.size()) break;
                        if (!std::equal(lj.begin(), lj.end(), li.begin() + static_cast<long>(pos))) continue;
                        Word left = snap[i].rhs;
                        Word right(li.begin(), li.begin() + static_cast<long>(pos));
                        right.insert(right.end(), snap[j].rhs.begin(), snap[j].rhs.end());
                        right.insert(right.end(), li.begin() + static_cast<long>(pos + lj.size()), li.end());
                        if (consider(std::move(left), std::move(right))) added = true;
                    }
            }
        if (over) break;
        if (!added) {
            rs.complete = true;
            break;
        }
        interreduce();
    }
    rs.note = over ? note : "";
    return rs;
}

Verdict words_equal(const CatPresentation& p, const RewriteSystem& rs, const Word& w1,
                    const Word& w2, long bfs_budget) {
    if (!p.composable(w1) || !p.composable(w2))
        throw std::invalid_argument("words_equal: word not composable");
    if (!w1.empty() && !w2.empty() &&
        (p.word_src(w1) != p.word_src(w2) || p.word_tgt(w1) != p.word_tgt(w2)))
        throw std::invalid_argument("words_equal: endpoint mismatch");
    if (w1.empty() != w2.empty()) {
        const Word& other = w1.empty() ? w2 : w1;
        if (p.word_src(other) != p.word_tgt(other))
            throw std::invalid_argument("words_equal: identity against a non-endo word");
    }
    if (rs.complete)
        return normalize(rs, w1) == normalize(rs, w2) ? Verdict::Equal : Verdict::NotEqual;
    if (w1 == w2) return Verdict::Equal;

    // Bidirectional search inside the congruence: rules and relations, both
    // directions, bounded length and node budget.
    std::vector<std::pair<Word, Word>> moves;
    size_t longest = 1;
    for (const RewriteRule& r : rs.rules) {
        moves.push_back({r.lhs, r.rhs});
        moves.push_back({r.rhs, r.lhs});
        longest = std::max({longest, r.lhs.size(), r.rhs.size()});
    }
    for (const auto& [u, v] : p.relations) {
        moves.push_back({u, v});
        moves.push_back({v, u});
        longest = std::max({longest, u.size(), v.size()});
    }
    size_t len_bound = std::max(w1.size(), w2.size()) + longest + 2;
    std::set<Word> seen1{w1}, seen2{w2};
    std::deque<Word> q1{w1}, q2{w2};
    long used = 0;
    while ((!q1.empty() || !q2.empty()) && used < bfs_budget) {
        bool first = !q1.empty() && (q2.empty() || q1.size() <= q2.size());
        std::deque<Word>& q = first ? q1 : q2;
        std::set<Word>& own = first ? seen1 : seen2;
        std::set<Word>& other = first ? seen2 : seen1;
        Word w = std::move(q.front());
        q.pop_front();
        ++used;
        for (const auto& [from, to] : moves)
            for (size_t pos = 0; pos + from.size() <= w.size(); ++pos) {
                if (!std::equal(from.begin(), from.end(), w.begin() + static_cast<long>(pos))) continue;
                Word nw(w.begin(), w.begin() + static_cast<long>(pos));
                nw.insert(nw.end(), to.begin(), to.end());
                nw.insert(nw.end(), w.begin() + static_cast<long>(pos + from.size()), w.end());
                if (nw.size() > len_bound) continue;
                if (other.count(nw)) return Verdict::Equal;
                if (own.insert(nw).second) q.push_back(nw);
            }
    }
    return Verdict::Unknown;
}

// ---------------------------------------------------------------------------
// Hom-set enumeration
// ---------------------------------------------------------------------------

std::vector<HomSet> hom_sets_from(const CatPresentation& p, const RewriteSystem& rs, int a,
                                  int length_bound) {
    int nobj = static_cast<int>(p.objects.size());
    std::vector<HomSet> out(static_cast<size_t>(nobj));
    if (a < 0 || a >= nobj) throw std::out_of_range("hom_sets_from: no such object");
    std::vector<std::vector<int>> by_src(static_cast<size_t>(nobj));
    for (size_t g = 0; g < p.generators.size(); ++g)
        by_src[static_cast<size_t>(p.generators[g].src)].push_back(static_cast<int>(g));

    auto suffix_reducible = [&](const Word& w) {
        for (const RewriteRule& r : rs.rules) {
            if (r.lhs.size() > w.size()) continue;
            if (std::equal(r.lhs.begin(), r.lhs.end(), w.end() - static_cast<long>(r.lhs.size())))
                return true;
        }
        return false;
    };

    out[static_cast<size_t>(a)].words.push_back({});  // the identity
    std::vector<std::pair<Word, int>> cur{{{}, a}};
    bool closed = false;
    for (int len = 1; len <= length_bound; ++len) {
        std::vector<std::pair<Word, int>> next;
        for (const auto& [w, at] : cur)
            for (int g : by_src[static_cast<size_t>(at)]) {
                Word nw = w;
                nw.push_back(g);
                // the parent is irreducible, so only suffixes of nw can match
                if (suffix_reducible(nw)) continue;
                out[static_cast<size_t>(p.generators[static_cast<size_t>(g)].tgt)].words.push_back(nw);
                next.emplace_back(std::move(nw), p.generators[static_cast<size_t>(g)].tgt);
            }
        cur = std::move(next);
        if (cur.empty()) {
            closed = true;
            break;
        }
    }
    // Prefixes of irreducible words are irreducible, so one empty level means
    // no longer normal forms exist at all (the gap certificate for any G).
    HomSet::Status st = (closed && rs.complete) ? HomSet::Finite : HomSet::Truncated;
    for (HomSet& h : out) h.status = st;
    return out;
}

HomSet hom_set(const CatPresentation& p, const RewriteSystem& rs, int a, int b, int length_bound) {
    if (b < 0 || b >= static_cast<int>(p.objects.size()))
        throw std::out_of_range("hom_set: no such object");
    return hom_sets_from(p, rs, a, length_bound)[static_cast<size_t>(b)];
}

// ---------------------------------------------------------------------------
// Finite categories
// ---------------------------------------------------------------------------

int FiniteCategory::hom_count(int a, int b) const {
    int c = 0;
    for (const Mor& m : morphisms)
        if (m.src == a && m.tgt == b) ++c;
    return c;
}

int FiniteCategory::compose_seq(int at_object, const std::vector<int>& ids) const {
    if (at_object < 0 || at_object >= static_cast<int>(objects.size())) return -1;
    int cur = identity[static_cast<size_t>(at_object)];
    for (int f : ids) {
        if (f < 0 || f >= static_cast<int>(morphisms.size())) return -1;
        cur = then[static_cast<size_t>(cur)][static_cast<size_t>(f)];
        if (cur < 0) return -1;
    }
    return cur;
}

ValidationReport validate_category(const FiniteCategory& C) {
    ValidationReport rep;
    auto flag = [&](const std::string& m) {
        rep.ok = false;
        rep.violations.push_back(m);
    };
    int no = static_cast<int>(C.objects.size()), nm = static_cast<int>(C.morphisms.size());
    if (static_cast<int>(C.identity.size()) != no) {
        flag("identity table size mismatch");
        return rep;
    }
    if (static_cast<int>(C.then.size()) != nm) {
        flag("composition table size mismatch");
        return rep;
    }
    for (const auto& row : C.then)
        if (static_cast<int>(row.size()) != nm) {
            flag("composition table row size mismatch");
            return rep;
        }
    for (const FiniteCategory::Mor& m : C.morphisms)
        if (m.src < 0 || m.src >= no || m.tgt < 0 || m.tgt >= no) flag("morphism endpoints out of range");
    if (!rep.ok) return rep;
    for (int x = 0; x < no; ++x) {
        int id = C.identity[static_cast<size_t>(x)];
        if (id < 0 || id >= nm || C.morphisms[static_cast<size_t>(id)].src != x ||
            C.morphisms[static_cast<size_t>(id)].tgt != x)
            flag("identity of object " + C.objects[static_cast<size_t>(x)] + " is not an endomorphism");
    }
    for (int f = 0; f < nm; ++f)
        for (int g = 0; g < nm; ++g) {
            int c = C.then[static_cast<size_t>(f)][static_cast<size_t>(g)];
            bool composable = C.morphisms[static_cast<size_t>(f)].tgt == C.morphisms[static_cast<size_t>(g)].src;
            if (composable != (c >= 0)) flag("composability mismatch in the table");
            if (c >= 0 && (C.morphisms[static_cast<size_t>(c)].src != C.morphisms[static_cast<size_t>(f)].src ||
                           C.morphisms[static_cast<size_t>(c)].tgt != C.morphisms[static_cast<size_t>(g)].tgt))
                flag("composite endpoints wrong");
        }
    if (!rep.ok) return rep;
    for (int f = 0; f < nm; ++f) {
        const auto& m = C.morphisms[static_cast<size_t>(f)];
        if (C.then[static_cast<size_t>(C.identity[static_cast<size_t>(m.src)])][static_cast<size_t>(f)] != f ||
            C.then[static_cast<size_t>(f)][static_cast<size_t>(C.identity[static_cast<size_t>(m.tgt)])] != f)
            flag("unit law fails at " + m.name);
    }
    for (int f = 0; f < nm; ++f)
        for (int g = 0; g < nm; ++g) {
            int fg = C.then[static_cast<size_t>(f)][static_cast<size_t>(g)];
            if (fg < 0) continue;
            for (int h = 0; h < nm; ++h) {
                int gh = C.then[static_cast<size_t>(g)][static_cast<size_t>(h)];
                if (gh < 0) continue;
                if (C.then[static_cast<size_t>(fg)][static_cast<size_t>(h)] !=
                    C.then[static_cast<size_t>(f)][static_cast<size_t>(gh)])
                    flag("associativity fails");
            }
        }
    return rep;
}

FiniteCategory ordinal_category(int n) {
    FiniteCategory C;
    for (int i = 0; i <= n; ++i) C.objects.push_back(std::to_string(i));
    std::vector<std::vector<int>> id_of(static_cast<size_t>(n) + 1,
                                        std::vector<int>(static_cast<size_t>(n) + 1, -1));
    for (int i = 0; i <= n; ++i)
        for (int j = i; j <= n; ++j) {
            id_of[static_cast<size_t>(i)][static_cast<size_t>(j)] = static_cast<int>(C.morphisms.size());
            std::string name = i == j ? "id" + std::to_string(i)
                                      : std::to_string(i) + "to" + std::to_string(j);
            C.morphisms.push_back({name, i, j});
        }
    for (int i = 0; i <= n; ++i) C.identity.push_back(id_of[static_cast<size_t>(i)][static_cast<size_t>(i)]);
    int nm = static_cast<int>(C.morphisms.size());
    C.then.assign(static_cast<size_t>(nm), std::vector<int>(static_cast<size_t>(nm), -1));
    for (int f = 0; f < nm; ++f)
        for (int g = 0; g < nm; ++g)
            if (C.morphisms[static_cast<size_t>(f)].tgt == C.morphisms[static_cast<size_t>(g)].src)
                C.then[static_cast<size_t>(f)][static_cast<size_t>(g)] =
                    id_of[static_cast<size_t>(C.morphisms[static_cast<size_t>(f)].src)]
                         [static_cast<size_t>(C.morphisms[static_cast<size_t>(g)].tgt)];
    return C;
}

FiniteCategory discrete_category(int k) {
    FiniteCategory C;
    for (int i = 0; i < k; ++i) {
        C.objects.push_back(std::to_string(i));
        C.morphisms.push_back({"id" + std::to_string(i), i, i});
        C.identity.push_back(i);
    }
    C.then.assign(static_cast<size_t>(k), std::vector<int>(static_cast<size_t>(k), -1));
    for (int i = 0; i < k; ++i) C.then[static_cast<size_t>(i)][static_cast<size_t>(i)] = i;
    return C;
}

FiniteCategory cyclic_group_category(int m) {
    if (m < 1) throw std::invalid_argument("cyclic_group_category: order must be positive");
    FiniteCategory C;
    C.objects = {"*"};
    for (int k = 0; k < m; ++k) {
        std::string name = k == 0 ? "e" : (k == 1 ? "g" : "g" + std::to_string(k));
        C.morphisms.push_back({name, 0, 0});
    }
    C.identity = {0};
    C.then.assign(static_cast<size_t>(m), std::vector<int>(static_cast<size_t>(m), -1));
    for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y) C.then[static_cast<size_t>(x)][static_cast<size_t>(y)] = (x + y) % m;
    return C;
}

FiniteCategory retraction_category() {
    CatPresentation p;
    p.objects = {"0", "1"};
    p.generators = {{"i", 0, 1}, {"r", 1, 0}};
    p.relations = {{Word{0, 1}, Word{}}};  // i then r = id₀
    RewriteSystem rs = complete_rewriting(p);
    RealizeResult rr = realize_finite(p, rs, 8);
    if (!rr.ok) throw std::logic_error("retraction_category: realization failed: " + rr.failure);
    return rr.cat;
}

FiniteCategory product_category(const FiniteCategory& C, const FiniteCategory& D) {
    FiniteCategory P;
    int oc = static_cast<int>(C.objects.size()), od = static_cast<int>(D.objects.size());
    int mc = static_cast<int>(C.morphisms.size()), md = static_cast<int>(D.morphisms.size());
    for (int x = 0; x < oc; ++x)
        for (int y = 0; y < od; ++y)
            P.objects.push_back("(" + C.objects[static_cast<size_t>(x)] + "," +
                                D.objects[static_cast<size_t>(y)] + ")");
    auto obj = [&](int x, int y) { return x * od + y; };
    for (int f = 0; f < mc; ++f)
        for (int g = 0; g < md; ++g) {
            const auto& mf = C.morphisms[static_cast<size_t>(f)];
            const auto& mg = D.morphisms[static_cast<size_t>(g)];
            P.morphisms.push_back({"(" + mf.name + "," + mg.name + ")", obj(mf.src, mg.src),
                                   obj(mf.tgt, mg.tgt)});
        }
    auto mor = [&](int f, int g) { return f * md + g; };
    for (int x = 0; x < oc; ++x)
        for (int y = 0; y < od; ++y)
            P.identity.push_back(mor(C.identity[static_cast<size_t>(x)], D.identity[static_cast<size_t>(y)]));
    int nm = mc * md;
    P.then.assign(static_cast<size_t>(nm), std::vector<int>(static_cast<size_t>(nm), -1));
    for (int f1 = 0; f1 < mc; ++f1)
        for (int g1 = 0; g1 < md; ++g1)
            for (int f2 = 0; f2 < mc; ++f2)
                for (int g2 = 0; g2 < md; ++g2) {
                    int cf = C.then[static_cast<size_t>(f1)][static_cast<size_t>(f2)];
                    int cg = D.then[static_cast<size_t>(g1)][static_cast<size_t>(g2)];
                    if (cf >= 0 && cg >= 0)
                        P.then[static_cast<size_t>(mor(f1, g1))][static_cast<size_t>(mor(f2, g2))] =
                            mor(cf, cg);
                }
    return P;
}

SimplicialSet nerve(const FiniteCategory& C, int cap) {
    if (cap < 0) throw std::invalid_argument("nerve: negative cap");
    SimplicialSet N;
    N.cap = cap;
    N.nd.resize(static_cast<size_t>(cap) + 1);
    for (const std::string& name : C.objects) N.nd[0].push_back(NdSimplex{name, {}});
    auto is_id = [&](int f) {
        return C.identity[static_cast<size_t>(C.morphisms[static_cast<size_t>(f)].src)] == f;
    };
    std::vector<int> nonid;
    for (int f = 0; f < static_cast<int>(C.morphisms.size()); ++f)
        if (!is_id(f)) nonid.push_back(f);
    // tuples per dimension, with an index for face lookups
    std::vector<std::map<std::vector<int>, int>> idx(static_cast<size_t>(cap) + 1);
    std::vector<std::vector<std::vector<int>>> tuples(static_cast<size_t>(cap) + 1);
    auto tuple_label = [&](const std::vector<int>& T) {
        std::string s;
        for (size_t i = 0; i < T.size(); ++i) {
            if (i) s += "|";
            s += C.morphisms[static_cast<size_t>(T[i])].name;
        }
        return s;
    };
    auto ez_ref = [&](const std::vector<int>& T) -> SimplexRef {
        // EZ reference of an arbitrary composable tuple (identities allowed)
        int n = static_cast<int>(T.size());
        std::vector<int> base;
        std::vector<int> v(static_cast<size_t>(n) + 1, 0);
        for (int j = 1; j <= n; ++j) {
            bool idm = is_id(T[static_cast<size_t>(j - 1)]);
            if (!idm) base.push_back(T[static_cast<size_t>(j - 1)]);
            v[static_cast<size_t>(j)] = v[static_cast<size_t>(j - 1)] + (idm ? 0 : 1);
        }
        int m = static_cast<int>(base.size());
        if (m == 0) {
            int o = n > 0 ? C.morphisms[static_cast<size_t>(T[0])].src
                          : -1;  // n == 0 handled by callers
            return SimplexRef(n, o, OrdinalMap(n, 0, std::vector<int>(static_cast<size_t>(n) + 1, 0)));
        }
        if (m == n) return nd_ref(n, idx[static_cast<size_t>(n)].at(T));
        return SimplexRef(n, idx[static_cast<size_t>(m)].at(base), OrdinalMap(n, m, std::move(v)));
    };
    for (int k = 1; k <= cap; ++k) {
        if (k == 1) {
            for (int f : nonid) {
                idx[1][{f}] = static_cast<int>(tuples[1].size());
                tuples[1].push_back({f});
            }
        } else {
            for (const std::vector<int>& T : tuples[static_cast<size_t>(k) - 1])
                for (int f : nonid)
                    if (C.morphisms[static_cast<size_t>(T.back())].tgt ==
                        C.morphisms[static_cast<size_t>(f)].src) {
                        std::vector<int> ext = T;
                        ext.push_back(f);
                        idx[static_cast<size_t>(k)][ext] = static_cast<int>(tuples[static_cast<size_t>(k)].size());
                        tuples[static_cast<size_t>(k)].push_back(std::move(ext));
                    }
        }
        for (const std::vector<int>& T : tuples[static_cast<size_t>(k)]) {
            NdSimplex s;
            s.label = tuple_label(T);
            for (int i = 0; i <= k; ++i) {
                if (k == 1) {
                    const auto& m = C.morphisms[static_cast<size_t>(T[0])];
                    s.faces.push_back(nd_ref(0, i == 0 ? m.tgt : m.src));
                    continue;
                }
                std::vector<int> Tp;
                if (i == 0) {
                    Tp.assign(T.begin() + 1, T.end());
                } else if (i == k) {
                    Tp.assign(T.begin(), T.end() - 1);
                } else {
                    Tp.assign(T.begin(), T.end());
                    int c = C.then[static_cast<size_t>(Tp[static_cast<size_t>(i - 1)])]
                                  [static_cast<size_t>(Tp[static_cast<size_t>(i)])];
                    Tp[static_cast<size_t>(i - 1)] = c;
                    Tp.erase(Tp.begin() + i);
                }
                s.faces.push_back(ez_ref(Tp));
            }
            N.nd[static_cast<size_t>(k)].push_back(std::move(s));
        }
    }
    return N;
}

RealizeResult realize_finite(const CatPresentation& p, const RewriteSystem& rs, int length_bound) {
    RealizeResult R;
    int nobj = static_cast<int>(p.objects.size());
    std::vector<std::vector<HomSet>> from(static_cast<size_t>(nobj));
    for (int a = 0; a < nobj; ++a) {
        from[static_cast<size_t>(a)] = hom_sets_from(p, rs, a, length_bound);
        for (int b = 0; b < nobj; ++b)
            if (from[static_cast<size_t>(a)][static_cast<size_t>(b)].status != HomSet::Finite) {
                R.failure = "hom(" + p.objects[static_cast<size_t>(a)] + ", " +
                            p.objects[static_cast<size_t>(b)] + ") did not certify finite";
                return R;
            }
    }
    R.cat.objects = p.objects;
    for (int a = 0; a < nobj; ++a)
        for (int b = 0; b < nobj; ++b)
            for (const Word& w : from[static_cast<size_t>(a)][static_cast<size_t>(b)].words) {
                int id = static_cast<int>(R.cat.morphisms.size());
                std::string name =
                    w.empty() ? "id_" + p.objects[static_cast<size_t>(a)] : p.show_word(w);
                R.cat.morphisms.push_back({name, a, b});
                R.index_of[{a, w}] = id;
                R.word_of.push_back(w);
            }
    R.cat.identity.assign(static_cast<size_t>(nobj), -1);
    for (int a = 0; a < nobj; ++a) R.cat.identity[static_cast<size_t>(a)] = R.index_of.at({a, Word{}});
    int nm = static_cast<int>(R.cat.morphisms.size());
    R.cat.then.assign(static_cast<size_t>(nm), std::vector<int>(static_cast<size_t>(nm), -1));
    for (int f = 0; f < nm; ++f)
        for (int g = 0; g < nm; ++g) {
            const auto& mf = R.cat.morphisms[static_cast<size_t>(f)];
            const auto& mg = R.cat.morphisms[static_cast<size_t>(g)];
            if (mf.tgt != mg.src) continue;
            Word w = R.word_of[static_cast<size_t>(f)];
            const Word& tail = R.word_of[static_cast<size_t>(g)];
            w.insert(w.end(), tail.begin(), tail.end());
            w = normalize(rs, std::move(w));
            auto it = R.index_of.find({mf.src, w});
            if (it == R.index_of.end()) {
                R.failure = "composite escaped the enumerated normal forms";
                return R;
            }
            R.cat.then[static_cast<size_t>(f)][static_cast<size_t>(g)] = it->second;
        }
    R.ok = true;
    return R;
}

CatIsoReport check_presented_iso(const CatPresentation& p, const RewriteSystem& rs,
                                 int length_bound, const FiniteCategory& D,
                                 const std::vector<int>& object_map,
                                 const std::vector<int>& gen_image) {
    CatIsoReport rep;
    if (object_map.size() != p.objects.size() || gen_image.size() != p.generators.size()) {
        rep.detail = "functor data has the wrong shape";
        return rep;
    }
    if (p.objects.size() != D.objects.size()) {
        rep.detail = "object counts differ";
        return rep;
    }
    {
        std::set<int> seen(object_map.begin(), object_map.end());
        if (seen.size() != object_map.size()) {
            rep.detail = "object map is not injective";
            return rep;
        }
    }
    for (size_t g = 0; g < p.generators.size(); ++g) {
        const auto& m = D.morphisms[static_cast<size_t>(gen_image[g])];
        if (m.src != object_map[static_cast<size_t>(p.generators[g].src)] ||
            m.tgt != object_map[static_cast<size_t>(p.generators[g].tgt)]) {
            rep.detail = "generator image has wrong endpoints: " + p.generators[g].name;
            return rep;
        }
    }
    auto eval = [&](int src_obj, const Word& w) -> int {
        std::vector<int> ids;
        for (int g : w) ids.push_back(gen_image[static_cast<size_t>(g)]);
        return D.compose_seq(object_map[static_cast<size_t>(src_obj)], ids);
    };
    for (const auto& [u, v] : p.relations) {
        if (u.empty() && v.empty()) continue;
        int src = p.word_src(u, p.word_src(v));
        if (eval(src, u) != eval(src, v)) {
            rep.detail = "a relation fails in the target category";
            return rep;
        }
    }
    RealizeResult R = realize_finite(p, rs, length_bound);
    if (!R.ok) {
        rep.detail = "realization failed: " + R.failure;
        return rep;
    }
    rep.morphism_count = static_cast<int>(R.cat.morphisms.size());
    if (R.cat.morphisms.size() != D.morphisms.size()) {
        rep.detail = "morphism counts differ: " + std::to_string(R.cat.morphisms.size()) + " vs " +
                     std::to_string(D.morphisms.size());
        return rep;
    }
    std::set<int> hit;
    for (int f = 0; f < static_cast<int>(R.cat.morphisms.size()); ++f) {
        int im = eval(R.cat.morphisms[static_cast<size_t>(f)].src, R.word_of[static_cast<size_t>(f)]);
        if (im < 0) {
            rep.detail = "evaluation failed to compose";
            return rep;
        }
        if (!hit.insert(im).second) {
            rep.detail = "evaluation is not injective";
            return rep;
        }
    }
    rep.iso = true;
    rep.detail = "isomorphism verified on " + std::to_string(rep.morphism_count) + " morphisms";
    return rep;
}

CatIsoReport tau_nerve_roundtrip(const FiniteCategory& C, int length_bound, int max_rules,
                                 int max_len) {
    SimplicialSet N = nerve(C, 2);
    CatPresentation p = fundamental_category(N);
    RewriteSystem rs = complete_rewriting(p, max_rules, max_len);
    std::vector<int> object_map(p.objects.size());
    for (size_t i = 0; i < object_map.size(); ++i) object_map[i] = static_cast<int>(i);
    std::vector<int> gen_image;
    for (int f = 0; f < static_cast<int>(C.morphisms.size()); ++f)
        if (C.identity[static_cast<size_t>(C.morphisms[static_cast<size_t>(f)].src)] != f)
            gen_image.push_back(f);
    return check_presented_iso(p, rs, length_bound, C, object_map, gen_image);
}

// ---------------------------------------------------------------------------
// Localization, split monomorphisms, terminal equivalence
// ---------------------------------------------------------------------------

CatPresentation localize(const CatPresentation& p, const std::vector<int>& gens) {
    CatPresentation q = p;
    std::set<int> todo;
    for (int g : gens) {
        if (g < 0 || g >= static_cast<int>(p.generators.size()))
            throw std::invalid_argument("localize: unknown generator");
        todo.insert(g);
    }
    for (int g : todo) {
        const Generator& s = p.generators[static_cast<size_t>(g)];
        std::string name = s.name + "_inv";
        while (q.generator_index(name) >= 0) name += "_";
        int inv = static_cast<int>(q.generators.size());
        q.generators.push_back({name, s.tgt, s.src});
        q.relations.push_back({Word{g, inv}, Word{}});
        q.relations.push_back({Word{inv, g}, Word{}});
    }
    return q;
}

CatPresentation groupoidify(const CatPresentation& p) {
    std::vector<int> all(p.generators.size());
    for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    return localize(p, all);
}

SplitMonoReport split_monos(const CatPresentation& p, const RewriteSystem& rs, int word_bound,
                            bool include_identities, long bfs_budget) {
    SplitMonoReport rep;
    rep.exhaustive = rs.complete;
    int nobj = static_cast<int>(p.objects.size());
    std::vector<std::vector<HomSet>> from(static_cast<size_t>(nobj));
    for (int a = 0; a < nobj; ++a) {
        from[static_cast<size_t>(a)] = hom_sets_from(p, rs, a, word_bound);
        for (const HomSet& h : from[static_cast<size_t>(a)])
            if (h.status != HomSet::Finite) rep.exhaustive = false;
    }
    for (int a = 0; a < nobj; ++a)
        for (int b = 0; b < nobj; ++b)
            for (const Word& m : from[static_cast<size_t>(a)][static_cast<size_t>(b)].words) {
                if (m.empty() && !include_identities) continue;
                for (const Word& r : from[static_cast<size_t>(b)][static_cast<size_t>(a)].words) {
                    Word w = m;
                    w.insert(w.end(), r.begin(), r.end());
                    Verdict v = words_equal(p, rs, w, Word{}, bfs_budget);
                    if (v == Verdict::Equal)
                        rep.pairs.push_back({m, r});
                    else if (v == Verdict::Unknown)
                        rep.exhaustive = false;
                }
            }
    return rep;
}

DpiResult dpi1_surrogate(const SimplicialSet& X, const DpiBounds& bounds) {
    DpiResult out;
    out.tau = fundamental_category(X);
    RewriteSystem rs = complete_rewriting(out.tau, bounds.max_rules, bounds.max_len);
    SplitMonoReport rep = split_monos(out.tau, rs, bounds.word_bound, false, bounds.bfs_budget);
    out.exhaustive = rep.exhaustive;
    for (int g = 0; g < static_cast<int>(out.tau.generators.size()); ++g) {
        Word nf = normalize(rs, Word{g});
        bool split = nf.empty();  // the identity class is trivially split
        for (const auto& pr : rep.pairs)
            if (pr.mono == nf) {
                split = true;
                break;
            }
        if (split) out.inverted.push_back(g);
    }
    out.localized = localize(out.tau, out.inverted);
    return out;
}

Ternary equivalent_to_terminal(const CatPresentation& p, const RewriteSystem& rs,
                               int length_bound) {
    if (p.objects.empty()) return Ternary::No;
    bool unknown = false;
    int nobj = static_cast<int>(p.objects.size());
    for (int a = 0; a < nobj; ++a) {
        std::vector<HomSet> hs = hom_sets_from(p, rs, a, length_bound);
        for (int b = 0; b < nobj; ++b) {
            const HomSet& h = hs[static_cast<size_t>(b)];
            if (h.status == HomSet::Finite) {
                if (h.words.size() != 1) return Ternary::No;
            } else {
                // distinct normal forms of a complete system are distinct classes
                if (rs.complete && h.words.size() >= 2) return Ternary::No;
                unknown = true;
            }
        }
    }
    return unknown ? Ternary::Unknown : Ternary::Yes;
}

}  // namespace simpcat
