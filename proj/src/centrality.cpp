#include "coread/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "coread/error.hpp"
#include "text_util.hpp"

namespace coread {

namespace {

double euclidean_norm(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v)
        s += x * x;
    return std::sqrt(s);
}

// Average ranks (1-based); tied values share the mean of their positions.
std::vector<double> average_ranks(std::span<const double> x) {
    const std::size_t n = x.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        if (x[a] != x[b])
            return x[a] < x[b];
        return a < b;
    });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && x[idx[j + 1]] == x[idx[i]])
            ++j;
        double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k)
            ranks[idx[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

} // namespace

CentralityResult eigenvector_centrality(const Graph& g, bool weighted, double tol,
                                        int max_iter) {
    const auto n = g.vertex_count();
    if (n == 0)
        throw Error("eigenvector centrality undefined for the empty graph");
    if (g.edge_count() == 0)
        throw Error("eigenvector centrality requires at least one edge");
    auto comp = g.component_ids();
    if (*std::max_element(comp.begin(), comp.end()) != 0)
        throw Error("graph is disconnected; extract the largest component first");

    CentralityResult res;
    std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n)));
    std::vector<double> y(n);

    for (int it = 1; it <= max_iter; ++it) {
        std::fill(y.begin(), y.end(), 0.0);
        for (VertexId u = 0; u < n; ++u) {
            for (const auto& [v, w] : g.neighbors(u)) {
                if (v < u)
                    continue;
                double a = weighted ? w : 1.0;
                if (u == v) {
                    y[u] += 2.0 * a * x[u];
                } else {
                    y[u] += a * x[v];
                    y[v] += a * x[u];
                }
            }
        }
        double norm = euclidean_norm(y);
        for (std::size_t i = 0; i < n; ++i)
            y[i] /= norm;

        // one-step averaging with the previous iterate
        double diff = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            y[i] += x[i];
        norm = euclidean_norm(y);
        for (std::size_t i = 0; i < n; ++i) {
            y[i] /= norm;
            diff = std::max(diff, std::fabs(y[i] - x[i]));
        }
        x.swap(y);
        res.iterations = it;
        if (diff < tol) {
            res.converged = true;
            break;
        }
    }
    res.scores = std::move(x);
    return res;
}

double spearman(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size())
        throw Error("spearman requires vectors of equal length");
    if (x.size() < 3)
        throw Error("spearman requires at least 3 observations");

    auto constant = [](std::span<const double> v) {
        for (double a : v)
            if (a != v[0])
                return false;
        return true;
    };
    if (constant(x) || constant(y))
        throw Error("spearman undefined for a constant vector");

    auto rx = average_ranks(x);
    auto ry = average_ranks(y);
    const double n = static_cast<double>(rx.size());
    double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
    double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        double dx = rx[i] - mx;
        double dy = ry[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    return sxy / std::sqrt(sxx * syy);
}

std::string render_centrality_table(const Graph& g, const CentralityResult& r) {
    if (r.scores.size() != g.vertex_count())
        throw Error("centrality result does not match the graph");
    std::vector<VertexId> order(g.vertex_count());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
        if (r.scores[a] != r.scores[b])
            return r.scores[a] > r.scores[b];
        return g.label(a) < g.label(b);
    });
    std::ostringstream os;
    for (VertexId v : order)
        os << g.label(v) << '\t' << detail::format_weight(r.scores[v]) << '\t'
           << detail::format_weight(g.size(v)) << '\n';
    return os.str();
}

} // namespace coread
