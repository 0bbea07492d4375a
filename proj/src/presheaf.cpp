#include "simpcat/presheaf.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace simpcat {

void ExplicitPresheaf::init(int top) {
    W = top;
    card.assign(static_cast<size_t>(W) + 1, 0);
    face.assign(static_cast<size_t>(W) + 1, {});
    degen.assign(static_cast<size_t>(W) + 1, {});
    for (int n = 1; n <= W; ++n) face[static_cast<size_t>(n)].resize(static_cast<size_t>(n) + 1);
    for (int n = 0; n < W; ++n) degen[static_cast<size_t>(n)].resize(static_cast<size_t>(n) + 1);
}

bool ExplicitPresheaf::check_identities(std::string* first_violation) const {
    auto fail = [&](const std::string& msg) {
        if (first_violation) *first_violation = msg;
        return false;
    };
    // d_i d_j = d_{j-1} d_i (i < j)
    for (int n = 2; n <= W; ++n)
        for (int e = 0; e < card[static_cast<size_t>(n)]; ++e)
            for (int j = 1; j <= n; ++j)
                for (int i = 0; i < j; ++i) {
                    int a = face[static_cast<size_t>(n) - 1][static_cast<size_t>(i)]
                                [static_cast<size_t>(face[static_cast<size_t>(n)][static_cast<size_t>(j)]
                                                         [static_cast<size_t>(e)])];
                    int b = face[static_cast<size_t>(n) - 1][static_cast<size_t>(j) - 1]
                                [static_cast<size_t>(face[static_cast<size_t>(n)][static_cast<size_t>(i)]
                                                         [static_cast<size_t>(e)])];
                    if (a != b) {
                        std::ostringstream os;
                        os << "d" << i << "d" << j << " != d" << j - 1 << "d" << i << " at dim " << n
                           << " elt " << e;
                        return fail(os.str());
                    }
                }
    // s_i s_j = s_{j+1} s_i (i <= j)
    for (int n = 0; n + 2 <= W; ++n)
        for (int e = 0; e < card[static_cast<size_t>(n)]; ++e)
            for (int j = 0; j <= n; ++j)
                for (int i = 0; i <= j; ++i) {
                    int a = degen[static_cast<size_t>(n) + 1][static_cast<size_t>(i)]
                                 [static_cast<size_t>(degen[static_cast<size_t>(n)][static_cast<size_t>(j)]
                                                           [static_cast<size_t>(e)])];
                    int b = degen[static_cast<size_t>(n) + 1][static_cast<size_t>(j) + 1]
                                 [static_cast<size_t>(degen[static_cast<size_t>(n)][static_cast<size_t>(i)]
                                                           [static_cast<size_t>(e)])];
                    if (a != b) return fail("degeneracy exchange identity violated");
                }
    // d_i s_j mixed identities
    for (int n = 0; n + 1 <= W; ++n)
        for (int e = 0; e < card[static_cast<size_t>(n)]; ++e)
            for (int j = 0; j <= n; ++j)
                for (int i = 0; i <= n + 1; ++i) {
                    int se = degen[static_cast<size_t>(n)][static_cast<size_t>(j)][static_cast<size_t>(e)];
                    int got = face[static_cast<size_t>(n) + 1][static_cast<size_t>(i)][static_cast<size_t>(se)];
                    int want;
                    if (i == j || i == j + 1) {
                        want = e;
                    } else if (i < j) {
                        if (n == 0) continue;
                        want = degen[static_cast<size_t>(n) - 1][static_cast<size_t>(j) - 1]
                                    [static_cast<size_t>(face[static_cast<size_t>(n)][static_cast<size_t>(i)]
                                                             [static_cast<size_t>(e)])];
                    } else {  // i > j + 1
                        if (n == 0) continue;
                        want = degen[static_cast<size_t>(n) - 1][static_cast<size_t>(j)]
                                    [static_cast<size_t>(face[static_cast<size_t>(n)][static_cast<size_t>(i) - 1]
                                                             [static_cast<size_t>(e)])];
                    }
                    if (got != want) return fail("mixed face/degeneracy identity violated");
                }
    return true;
}

ExplicitPresheaf tabulate(const SimplicialSet& X, int W) {
    ExplicitPresheaf P;
    P.init(W);
    std::vector<std::vector<SimplexRef>> elts(static_cast<size_t>(W) + 1);
    std::vector<std::map<SimplexRef, int>> index(static_cast<size_t>(W) + 1);
    for (int n = 0; n <= W; ++n) {
        elts[static_cast<size_t>(n)] = all_simplices(X, n);
        P.card[static_cast<size_t>(n)] = static_cast<int>(elts[static_cast<size_t>(n)].size());
        for (int e = 0; e < P.card[static_cast<size_t>(n)]; ++e)
            index[static_cast<size_t>(n)][elts[static_cast<size_t>(n)][static_cast<size_t>(e)]] = e;
    }
    for (int n = 1; n <= W; ++n)
        for (int i = 0; i <= n; ++i) {
            auto& col = P.face[static_cast<size_t>(n)][static_cast<size_t>(i)];
            col.resize(static_cast<size_t>(P.card[static_cast<size_t>(n)]));
            for (int e = 0; e < P.card[static_cast<size_t>(n)]; ++e) {
                SimplexRef r = act(X, elts[static_cast<size_t>(n)][static_cast<size_t>(e)], face_map(n, i));
                col[static_cast<size_t>(e)] = index[static_cast<size_t>(n) - 1].at(r);
            }
        }
    for (int n = 0; n < W; ++n)
        for (int i = 0; i <= n; ++i) {
            auto& col = P.degen[static_cast<size_t>(n)][static_cast<size_t>(i)];
            col.resize(static_cast<size_t>(P.card[static_cast<size_t>(n)]));
            for (int e = 0; e < P.card[static_cast<size_t>(n)]; ++e) {
                SimplexRef r =
                    act(X, elts[static_cast<size_t>(n)][static_cast<size_t>(e)], degeneracy_map(n, i));
                col[static_cast<size_t>(e)] = index[static_cast<size_t>(n) + 1].at(r);
            }
        }
    return P;
}

int ref_index(const SimplicialSet& X, const SimplexRef& s) {
    auto elts = all_simplices(X, s.dim);
    auto it = std::find(elts.begin(), elts.end(), s);
    if (it == elts.end()) throw std::out_of_range("ref_index: reference not found");
    return static_cast<int>(it - elts.begin());
}

CanonResult canonicalize(const ExplicitPresheaf& P,
                         const std::function<std::string(int, int)>& label) {
    CanonResult R;
    R.sset.cap = P.W;
    R.sset.nd.resize(static_cast<size_t>(P.W) + 1);
    R.elt_ref.resize(static_cast<size_t>(P.W) + 1);
    R.nd_elt.resize(static_cast<size_t>(P.W) + 1);

    // Which elements are degenerate (hit by some s_i), and a witness (i, y).
    for (int n = 0; n <= P.W; ++n) {
        int cn = P.card[static_cast<size_t>(n)];
        std::vector<int> wit_i(static_cast<size_t>(cn), -1), wit_y(static_cast<size_t>(cn), -1);
        if (n >= 1) {
            for (int i = 0; i <= n - 1; ++i)
                for (int y = 0; y < P.card[static_cast<size_t>(n) - 1]; ++y) {
                    int x = P.degen[static_cast<size_t>(n) - 1][static_cast<size_t>(i)][static_cast<size_t>(y)];
                    if (wit_i[static_cast<size_t>(x)] < 0) {
                        wit_i[static_cast<size_t>(x)] = i;
                        wit_y[static_cast<size_t>(x)] = y;
                    }
                }
        }
        R.elt_ref[static_cast<size_t>(n)].assign(static_cast<size_t>(cn), SimplexRef{});
        for (int e = 0; e < cn; ++e) {
            if (wit_i[static_cast<size_t>(e)] < 0) {
                int id = static_cast<int>(R.sset.nd[static_cast<size_t>(n)].size());
                R.sset.nd[static_cast<size_t>(n)].push_back(NdSimplex{label(n, e), {}});
                R.nd_elt[static_cast<size_t>(n)].push_back(e);
                R.elt_ref[static_cast<size_t>(n)][static_cast<size_t>(e)] = nd_ref(n, id);
            } else {
                // EZ form through the witness: x = s_i(y) = (η ∘ σ_i)* base(y)
                const SimplexRef& under =
                    R.elt_ref[static_cast<size_t>(n) - 1][static_cast<size_t>(wit_y[static_cast<size_t>(e)])];
                R.elt_ref[static_cast<size_t>(n)][static_cast<size_t>(e)] =
                    SimplexRef(n, under.nd_index,
                               compose(under.degeneracy, degeneracy_map(n - 1, wit_i[static_cast<size_t>(e)])));
            }
        }
    }
    // Face arrays of the non-degenerate simplices.
    for (int n = 1; n <= P.W; ++n)
        for (size_t id = 0; id < R.sset.nd[static_cast<size_t>(n)].size(); ++id) {
            int e = R.nd_elt[static_cast<size_t>(n)][id];
            auto& faces = R.sset.nd[static_cast<size_t>(n)][id].faces;
            faces.reserve(static_cast<size_t>(n) + 1);
            for (int i = 0; i <= n; ++i) {
                int fe = P.face[static_cast<size_t>(n)][static_cast<size_t>(i)][static_cast<size_t>(e)];
                faces.push_back(R.elt_ref[static_cast<size_t>(n) - 1][static_cast<size_t>(fe)]);
            }
        }
    return R;
}

}  // namespace simpcat
