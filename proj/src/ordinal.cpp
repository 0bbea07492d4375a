#include "simpcat/ordinal.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <sstream>
#include <stdexcept>

namespace simpcat {

OrdinalMap::OrdinalMap(int src_dim, int tgt_dim, std::vector<int> vals)
    : source_dim(src_dim), target_dim(tgt_dim), values(std::move(vals)) {
    if (!well_formed())
        throw std::invalid_argument("OrdinalMap: not a weakly monotone map " + to_string());
}

bool OrdinalMap::well_formed() const {
    if (source_dim < 0 || target_dim < 0) return false;
    if (values.size() != static_cast<size_t>(source_dim) + 1) return false;
    for (size_t i = 0; i < values.size(); ++i) {
        if (values[i] < 0 || values[i] > target_dim) return false;
        if (i > 0 && values[i - 1] > values[i]) return false;
    }
    return true;
}

bool OrdinalMap::is_identity() const {
    if (source_dim != target_dim) return false;
    for (int i = 0; i <= source_dim; ++i)
        if (values[static_cast<size_t>(i)] != i) return false;
    return true;
}

bool OrdinalMap::is_surjective() const {
    std::set<int> image(values.begin(), values.end());
    return static_cast<int>(image.size()) == target_dim + 1;
}

bool OrdinalMap::is_injective() const {
    for (size_t i = 1; i < values.size(); ++i)
        if (values[i] == values[i - 1]) return false;
    return true;
}

std::string OrdinalMap::to_string() const {
    std::ostringstream os;
    os << "[" << source_dim << "]->[" << target_dim << "]:(";
    for (size_t i = 0; i < values.size(); ++i) {
        if (i > 0) os << ",";
        os << values[i];
    }
    os << ")";
    return os.str();
}

OrdinalMap ordinal_identity(int n) {
    std::vector<int> v(static_cast<size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) v[static_cast<size_t>(i)] = i;
    return OrdinalMap(n, n, std::move(v));
}

OrdinalMap face_map(int n, int i) {
    if (n < 1 || i < 0 || i > n) throw std::invalid_argument("face_map: bad indices");
    std::vector<int> v;
    v.reserve(static_cast<size_t>(n));
    for (int j = 0; j <= n; ++j)
        if (j != i) v.push_back(j);
    return OrdinalMap(n - 1, n, std::move(v));
}

OrdinalMap degeneracy_map(int n, int i) {
    if (n < 0 || i < 0 || i > n) throw std::invalid_argument("degeneracy_map: bad indices");
    std::vector<int> v;
    v.reserve(static_cast<size_t>(n) + 2);
    for (int j = 0; j <= n + 1; ++j) v.push_back(j <= i ? j : j - 1);
    return OrdinalMap(n + 1, n, std::move(v));
}

OrdinalMap vertex_map(int n, int k) {
    if (k < 0 || k > n) throw std::invalid_argument("vertex_map: bad vertex");
    return OrdinalMap(0, n, {k});
}

OrdinalMap edge_map(int n, int a, int b) {
    if (a < 0 || b < a || b > n) throw std::invalid_argument("edge_map: bad endpoints");
    return OrdinalMap(1, n, {a, b});
}

OrdinalMap compose(const OrdinalMap& after, const OrdinalMap& before) {
    if (before.target_dim != after.source_dim)
        throw std::invalid_argument("compose: dimension mismatch " + after.to_string() + " o " +
                                    before.to_string());
    std::vector<int> v(before.values.size());
    for (size_t i = 0; i < v.size(); ++i)
        v[i] = after.values[static_cast<size_t>(before.values[i])];
    return OrdinalMap(before.source_dim, after.target_dim, std::move(v));
}

EpiMono epi_mono_factor(const OrdinalMap& a) {
    std::vector<int> image;
    for (int v : a.values)
        if (image.empty() || image.back() != v) image.push_back(v);
    int rank = static_cast<int>(image.size()) - 1;
    std::vector<int> surj(a.values.size());
    for (size_t i = 0; i < a.values.size(); ++i) {
        surj[i] = static_cast<int>(
            std::lower_bound(image.begin(), image.end(), a.values[i]) - image.begin());
    }
    return EpiMono{OrdinalMap(a.source_dim, rank, std::move(surj)),
                   OrdinalMap(rank, a.target_dim, std::move(image))};
}

std::vector<OrdinalMap> all_surjections(int n, int k) {
    std::vector<OrdinalMap> out;
    if (k > n || k < 0) return out;
    int drops = n - k;
    // choose the set of collapsed positions among {0..n-1}
    std::vector<int> idx(static_cast<size_t>(drops));
    for (int i = 0; i < drops; ++i) idx[static_cast<size_t>(i)] = i;
    if (drops == 0) {
        out.push_back(ordinal_identity(n));
        return out;
    }
    while (true) {
        out.push_back(surjection_from_collapses(n, idx));
        int pos = drops - 1;
        while (pos >= 0 && idx[static_cast<size_t>(pos)] == n - drops + pos) --pos;
        if (pos < 0) break;
        ++idx[static_cast<size_t>(pos)];
        for (int q = pos + 1; q < drops; ++q)
            idx[static_cast<size_t>(q)] = idx[static_cast<size_t>(q - 1)] + 1;
    }
    return out;
}

std::vector<OrdinalMap> all_ordinal_maps(int m, int n) {
    // weakly increasing sequences of length m+1 with values in [0, n]
    std::vector<OrdinalMap> out;
    std::vector<int> v(static_cast<size_t>(m) + 1, 0);
    while (true) {
        out.push_back(OrdinalMap(m, n, v));
        int pos = m;
        while (pos >= 0 && v[static_cast<size_t>(pos)] == n) --pos;
        if (pos < 0) break;
        int nv = v[static_cast<size_t>(pos)] + 1;
        for (int q = pos; q <= m; ++q) v[static_cast<size_t>(q)] = nv;
    }
    return out;
}

std::vector<int> collapse_positions(const OrdinalMap& surj) {
    std::vector<int> out;
    for (int i = 0; i < surj.source_dim; ++i)
        if (surj.values[static_cast<size_t>(i)] == surj.values[static_cast<size_t>(i) + 1])
            out.push_back(i);
    return out;
}

OrdinalMap surjection_from_collapses(int n, const std::vector<int>& positions) {
    std::set<int> drop(positions.begin(), positions.end());
    std::vector<int> v(static_cast<size_t>(n) + 1);
    int cur = 0;
    for (int i = 0; i <= n; ++i) {
        v[static_cast<size_t>(i)] = cur;
        if (!drop.count(i)) ++cur;
    }
    return OrdinalMap(n, n - static_cast<int>(drop.size()), std::move(v));
}

OrdinalMap reverse(const OrdinalMap& a) {
    std::vector<int> v(a.values.size());
    for (size_t i = 0; i < v.size(); ++i)
        v[i] = a.target_dim - a.values[a.values.size() - 1 - i];
    return OrdinalMap(a.source_dim, a.target_dim, std::move(v));
}

}  // namespace simpcat
