#include "dogfight/stats.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace dogfight {

namespace {

using Count = unsigned __int128;

double sanitize(double v) { return std::isnan(v) ? kInf : v; }

// Midranks doubled so they are integers.
std::vector<long> doubled_midranks(const std::vector<double>& values) {
    const auto r = midranks(values);
    std::vector<long> out(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) out[i] = std::lround(2.0 * r[i]);
    return out;
}

double tie_term(const std::vector<double>& values) {
    std::vector<double> v(values.size());
    std::transform(values.begin(), values.end(), v.begin(), sanitize);
    std::sort(v.begin(), v.end());
    double t = 0.0;
    for (std::size_t i = 0; i < v.size();) {
        std::size_t j = i;
        while (j < v.size() && v[j] == v[i]) ++j;
        const double n = static_cast<double>(j - i);
        t += n * n * n - n;
        i = j;
    }
    return t;
}

double normal_two_sided(double z) { return std::erfc(z / std::sqrt(2.0)); }

double ratio(Count num, Count den) { return static_cast<double>(num) / static_cast<double>(den); }

double binomial_double(long n, long k) {
    return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
}

// Exact two-sided p for the rank-sum statistic of a subset of size m drawn
// from the pooled doubled ranks.
double exact_rank_sum_p(const std::vector<long>& ranks, long m, long observed) {
    const long n = static_cast<long>(ranks.size());
    const long center = m * (n + 1);
    const long dev = std::abs(observed - center);
    const long max_sum = 2 * n * m;
    const bool wide = binomial_double(n, m) > 1e36;
    if (!wide) {
        std::vector<std::vector<Count>> dp(m + 1, std::vector<Count>(max_sum + 1, 0));
        dp[0][0] = 1;
        for (long i = 0; i < n; ++i)
            for (long k = std::min(m, i + 1); k >= 1; --k)
                for (long s = max_sum; s >= ranks[i]; --s) dp[k][s] += dp[k - 1][s - ranks[i]];
        Count hit = 0, total = 0;
        for (long s = 0; s <= max_sum; ++s) {
            total += dp[m][s];
            if (std::abs(s - center) >= dev) hit += dp[m][s];
        }
        return ratio(hit, total);
    }
    std::vector<std::vector<double>> dp(m + 1, std::vector<double>(max_sum + 1, 0.0));
    dp[0][0] = 1.0;
    for (long i = 0; i < n; ++i)
        for (long k = std::min(m, i + 1); k >= 1; --k)
            for (long s = max_sum; s >= ranks[i]; --s) dp[k][s] += dp[k - 1][s - ranks[i]];
    double hit = 0.0, total = 0.0;
    for (long s = 0; s <= max_sum; ++s) {
        total += dp[m][s];
        if (std::abs(s - center) >= dev) hit += dp[m][s];
    }
    return hit / total;
}

}  // namespace

std::vector<double> midranks(const std::vector<double>& values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return sanitize(values[a]) < sanitize(values[b]); });
    std::vector<double> ranks(n);
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && sanitize(values[order[j]]) == sanitize(values[order[i]])) ++j;
        const double r = 0.5 * static_cast<double>(i + 1 + j);
        for (std::size_t k = i; k < j; ++k) ranks[order[k]] = r;
        i = j;
    }
    return ranks;
}

RankTest rank_sum_test(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("rank-sum test needs non-empty samples");
    std::vector<double> pooled(a);
    pooled.insert(pooled.end(), b.begin(), b.end());
    const long na = static_cast<long>(a.size()), nb = static_cast<long>(b.size());
    const long n = na + nb;
    const auto ranks = doubled_midranks(pooled);
    long da = 0;
    for (long i = 0; i < na; ++i) da += ranks[i];
    const long db = n * (n + 1) - da;

    RankTest r;
    if (std::min(na, nb) <= 8) {
        r.exact = true;
        if (na <= nb) {
            r.p = exact_rank_sum_p(ranks, na, da);
        } else {
            std::vector<long> reordered(ranks.begin() + na, ranks.end());
            reordered.insert(reordered.end(), ranks.begin(), ranks.begin() + na);
            r.p = exact_rank_sum_p(reordered, nb, db);
        }
    } else {
        const double u = 0.5 * da - 0.5 * na * (na + 1.0);
        const double mu = 0.5 * na * nb;
        const double nn = static_cast<double>(n);
        const double var = na * nb / 12.0 * ((nn + 1.0) - tie_term(pooled) / (nn * (nn - 1.0)));
        if (var <= 0.0) {
            r.p = 1.0;
        } else {
            const double z = std::max(0.0, std::abs(u - mu) - 0.5) / std::sqrt(var);
            r.p = std::min(1.0, normal_two_sided(z));
        }
    }
    // Compare mean ranks: da / na versus db / nb.
    const long lhs = da * nb, rhs = db * na;
    if (r.p < kSignificance && lhs != rhs) r.mark = lhs < rhs ? '+' : '-';
    return r;
}

double rank_sum_enumeration(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> pooled(a);
    pooled.insert(pooled.end(), b.begin(), b.end());
    const long n = static_cast<long>(pooled.size()), m = static_cast<long>(a.size());
    if (n > 62) throw std::invalid_argument("enumeration limited to 62 pooled values");
    const auto ranks = doubled_midranks(pooled);
    long observed = 0;
    for (long i = 0; i < m; ++i) observed += ranks[i];
    const long center = m * (n + 1), dev = std::abs(observed - center);
    // Walk every m-subset in lexicographic order.
    std::vector<long> idx(m);
    std::iota(idx.begin(), idx.end(), 0);
    Count hit = 0, total = 0;
    while (true) {
        long s = 0;
        for (long i : idx) s += ranks[i];
        ++total;
        if (std::abs(s - center) >= dev) ++hit;
        long k = m - 1;
        while (k >= 0 && idx[k] == n - m + k) --k;
        if (k < 0) break;
        ++idx[k];
        for (long j = k + 1; j < m; ++j) idx[j] = idx[j - 1] + 1;
    }
    return ratio(hit, total);
}

RankTest signed_rank_test(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size() || a.empty()) throw std::invalid_argument("signed-rank test needs paired samples");
    std::vector<double> diff;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double x = sanitize(a[i]), y = sanitize(b[i]);
        if (x == y) continue;
        diff.push_back(x - y);
    }
    RankTest r;
    if (diff.empty()) return r;
    std::vector<double> mag(diff.size());
    std::transform(diff.begin(), diff.end(), mag.begin(), [](double d) { return std::abs(d); });
    const auto ranks = doubled_midranks(mag);
    const long n = static_cast<long>(diff.size());
    long total = 0, pos = 0;
    for (long i = 0; i < n; ++i) {
        total += ranks[i];
        if (diff[i] > 0) pos += ranks[i];
    }
    const long dev = std::abs(2 * pos - total);
    if (n <= 25) {
        r.exact = true;
        std::vector<Count> dp(total + 1, 0);
        dp[0] = 1;
        for (long i = 0; i < n; ++i)
            for (long s = total; s >= ranks[i]; --s) dp[s] += dp[s - ranks[i]];
        Count hit = 0, all = 0;
        for (long s = 0; s <= total; ++s) {
            all += dp[s];
            if (std::abs(2 * s - total) >= dev) hit += dp[s];
        }
        r.p = ratio(hit, all);
    } else {
        const double nn = static_cast<double>(n);
        const double var = nn * (nn + 1.0) * (2.0 * nn + 1.0) / 24.0 - tie_term(mag) / 48.0;
        const double z = std::max(0.0, 0.5 * dev / 2.0 - 0.5) / std::sqrt(var);
        r.p = std::min(1.0, normal_two_sided(z));
    }
    // Positive differences mean a is larger, i.e. worse.
    if (r.p < kSignificance && 2 * pos != total) r.mark = 2 * pos < total ? '+' : '-';
    return r;
}

FriedmanResult friedman_ranks(const MatrixXd& matrix) {
    if (matrix.rows() < 1 || matrix.cols() < 2)
        throw std::invalid_argument("Friedman ranks need at least one problem and two algorithms");
    FriedmanResult out;
    out.row_ranks.resize(matrix.rows(), matrix.cols());
    for (Eigen::Index p = 0; p < matrix.rows(); ++p) {
        std::vector<double> row(matrix.cols());
        for (Eigen::Index a = 0; a < matrix.cols(); ++a) row[a] = matrix(p, a);
        const auto r = midranks(row);
        for (Eigen::Index a = 0; a < matrix.cols(); ++a) out.row_ranks(p, a) = r[a];
    }
    out.mean_rank = out.row_ranks.colwise().mean().transpose();
    out.final_rank.resize(matrix.cols());
    for (Eigen::Index a = 0; a < matrix.cols(); ++a)
        out.final_rank[a] = 1.0 + static_cast<double>((out.mean_rank.array() < out.mean_rank[a]).count());
    return out;
}

std::vector<double> kruskal_mean_ranks(const std::vector<std::vector<double>>& samples) {
    if (samples.size() < 2) throw std::invalid_argument("Kruskal mean ranks need at least two samples");
    std::vector<double> pooled;
    for (const auto& s : samples) {
        if (s.empty()) throw std::invalid_argument("Kruskal mean ranks need non-empty samples");
        pooled.insert(pooled.end(), s.begin(), s.end());
    }
    const auto r = midranks(pooled);
    std::vector<double> out;
    std::size_t k = 0;
    for (const auto& s : samples) {
        double sum = 0.0;
        for (std::size_t i = 0; i < s.size(); ++i) sum += r[k++];
        out.push_back(sum / static_cast<double>(s.size()));
    }
    return out;
}

Summary summarize_values(const std::vector<double>& values, const std::vector<bool>& feasible) {
    if (values.empty() || values.size() != feasible.size()) throw std::invalid_argument("summary needs runs");
    Summary s;
    s.runs = static_cast<int>(values.size());
    std::vector<double> ok;
    for (std::size_t i = 0; i < values.size(); ++i)
        if (feasible[i]) ok.push_back(values[i]);
    s.success = static_cast<double>(ok.size()) / static_cast<double>(values.size());
    if (ok.empty()) return s;
    const double n = static_cast<double>(ok.size());
    const double mean = std::accumulate(ok.begin(), ok.end(), 0.0) / n;
    double ss = 0.0;
    for (double v : ok) ss += (v - mean) * (v - mean);
    s.mean = mean;
    s.std = ok.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
    s.best = *std::min_element(ok.begin(), ok.end());
    return s;
}

Summary summarize(const std::vector<RunRecord>& runs) {
    std::vector<double> v;
    std::vector<bool> f;
    for (const auto& r : runs) {
        v.push_back(r.best_value);
        f.push_back(r.feasible);
    }
    return summarize_values(v, f);
}

std::vector<double> final_values(const std::vector<RunRecord>& runs) {
    std::vector<double> v;
    for (const auto& r : runs) v.push_back(r.feasible ? sanitize(r.best_value) : kInf);
    return v;
}

StatReport build_report(const std::vector<std::string>& problems, const std::vector<std::string>& algorithms,
                        const std::vector<std::vector<std::vector<RunRecord>>>& runs) {
    if (problems.size() != runs.size()) throw std::invalid_argument("report: problem count mismatch");
    StatReport rep;
    rep.algorithms = algorithms;
    MatrixXd means(problems.size(), algorithms.size());
    for (std::size_t p = 0; p < problems.size(); ++p) {
        if (runs[p].size() != algorithms.size()) throw std::invalid_argument("report: algorithm count mismatch");
        ProblemStats ps;
        ps.problem = problems[p];
        std::vector<std::vector<double>> samples;
        for (std::size_t a = 0; a < algorithms.size(); ++a) {
            ps.summaries.push_back(summarize(runs[p][a]));
            samples.push_back(final_values(runs[p][a]));
            means(p, a) = ps.summaries.back().mean.value_or(kInf);
        }
        for (std::size_t a = 0; a < algorithms.size(); ++a)
            ps.versus_reference.push_back(a == 0 ? RankTest{} : rank_sum_test(samples[0], samples[a]));
        if (algorithms.size() >= 2) ps.kruskal = kruskal_mean_ranks(samples);
        rep.problems.push_back(std::move(ps));
    }
    if (problems.size() >= 2 && algorithms.size() >= 2) rep.friedman = friedman_ranks(means);
    return rep;
}

std::string format_real(double v) {
    if (std::isnan(v)) return "NaN";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

namespace {

std::string opt(const std::optional<double>& v) { return v ? format_real(*v) : "NaN"; }

std::string short_real(double v) {
    std::ostringstream os;
    os << std::setprecision(6) << v;
    return os.str();
}

std::string short_opt(const std::optional<double>& v) { return v ? short_real(*v) : "NaN"; }

std::string mark_text(char m) { return m == '=' ? "~" : std::string(1, m); }

void print_table(std::ostream& out, const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width;
    for (const auto& r : rows)
        for (std::size_t c = 0; c < r.size(); ++c) {
            if (width.size() <= c) width.push_back(0);
            width[c] = std::max(width[c], r[c].size());
        }
    for (const auto& r : rows) {
        for (std::size_t c = 0; c < r.size(); ++c)
            out << (c ? "  " : "") << std::left << std::setw(static_cast<int>(width[c])) << r[c];
        out << '\n';
    }
}

}  // namespace

void write_summary_csv(std::ostream& out, const StatReport& report) {
    out << "problem,algorithm,runs,mean,std,best,success,p_value,mark,kruskal_mean_rank\n";
    for (const auto& ps : report.problems) {
        for (std::size_t a = 0; a < report.algorithms.size(); ++a) {
            const auto& s = ps.summaries[a];
            const auto& t = ps.versus_reference[a];
            out << ps.problem << ',' << report.algorithms[a] << ',' << s.runs << ',' << opt(s.mean) << ','
                << opt(s.std) << ',' << opt(s.best) << ',' << format_real(s.success) << ','
                << (a == 0 ? "NaN" : format_real(t.p)) << ',' << (a == 0 ? "ref" : mark_text(t.mark)) << ','
                << (ps.kruskal.empty() ? "NaN" : format_real(ps.kruskal[a])) << '\n';
        }
    }
}

void write_report_text(std::ostream& out, const StatReport& report) {
    const std::string ref = report.algorithms.empty() ? "" : report.algorithms.front();
    for (const auto& ps : report.problems) {
        out << ps.problem << " (marks: reference " << ref << " vs each algorithm, rank-sum at 5%)\n";
        std::vector<std::vector<std::string>> rows = {
            {"Algorithm", "Mean", "Std", "Best", "Success", "p", "Mark", "Kruskal"}};
        for (std::size_t a = 0; a < report.algorithms.size(); ++a) {
            const auto& s = ps.summaries[a];
            const auto& t = ps.versus_reference[a];
            rows.push_back({report.algorithms[a], short_opt(s.mean), short_opt(s.std), short_opt(s.best),
                            short_real(s.success), a == 0 ? "-" : short_real(t.p), a == 0 ? "ref" : mark_text(t.mark),
                            ps.kruskal.empty() ? "-" : short_real(ps.kruskal[a])});
        }
        print_table(out, rows);
        out << '\n';
    }
    if (report.friedman) {
        out << "Friedman ranks over " << report.problems.size() << " problems\n";
        std::vector<std::vector<std::string>> rows = {{"Algorithm", "FMR", "F-Rank"}};
        for (std::size_t a = 0; a < report.algorithms.size(); ++a)
            rows.push_back({report.algorithms[a], short_real(report.friedman->mean_rank[a]),
                            short_real(report.friedman->final_rank[a])});
        print_table(out, rows);
    }
}

}  // namespace dogfight
