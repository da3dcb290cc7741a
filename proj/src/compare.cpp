#include "compare.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <numeric>
#include <sstream>
#include <thread>

namespace chaoscrypt {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace

std::vector<std::string> expand_seeds(std::uint64_t base, std::size_t count) {
    std::vector<std::string> seeds;
    seeds.reserve(count);
    std::uint64_t state = base;
    for (std::size_t i = 0; i < count; ++i) {
        char buf[kHexSeedLength + 1];
        for (int w = 0; w < 4; ++w) {
            std::snprintf(buf + 16 * w, 17, "%016llx", static_cast<unsigned long long>(splitmix64(state)));
        }
        seeds.emplace_back(buf, kHexSeedLength);
    }
    return seeds;
}

double ComparisonMatrix::mean_passes(std::size_t kind_index) const {
    const auto& row = passes.at(kind_index);
    if (row.empty()) return 0.0;
    return std::accumulate(row.begin(), row.end(), 0.0) / static_cast<double>(row.size());
}

ComparisonMatrix compare_generators(const std::vector<GeneratorKind>& kinds, const std::vector<std::string>& seeds,
                                    std::uint64_t n_bits, double alpha, unsigned threads) {
    require(!kinds.empty() && !seeds.empty(), "comparison needs at least one kind and one seed");
    require(n_bits > 0, "comparison needs a positive sequence length");

    ComparisonMatrix m;
    m.kinds = kinds;
    m.seeds = seeds;
    m.n_bits = n_bits;
    m.alpha = alpha;
    m.passes.assign(kinds.size(), std::vector<int>(seeds.size(), 0));
    m.applicable.assign(kinds.size(), std::vector<int>(seeds.size(), 0));

    const std::size_t jobs = kinds.size() * seeds.size();
    std::vector<std::exception_ptr> failures(jobs);
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (std::size_t job; (job = next.fetch_add(1)) < jobs;) {
            const std::size_t k = job / seeds.size();
            const std::size_t s = job % seeds.size();
            try {
                CipherKey key = derive_key(seeds[s], kinds[k]);
                key.spec.n_bits = n_bits;
                const auto report = sts::run_suite(generate_bits(key.spec), alpha);
                m.passes[k][s] = report.pass_count();
                m.applicable[k][s] = report.applicable_count();
            } catch (...) {
                failures[job] = std::current_exception();
            }
        }
    };

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, jobs));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    for (const auto& failure : failures) {
        if (failure) std::rethrow_exception(failure);
    }
    return m;
}

std::string format_matrix(const ComparisonMatrix& m) {
    std::ostringstream out;
    char buf[64];
    out << "pass counts over " << m.n_bits << " bits, alpha " << m.alpha << '\n';
    std::snprintf(buf, sizeof buf, "%-18s", "seed");
    out << buf;
    for (auto kind : m.kinds) {
        std::snprintf(buf, sizeof buf, " %16s", std::string(generator_name(kind)).c_str());
        out << buf;
    }
    out << '\n';
    for (std::size_t s = 0; s < m.seeds.size(); ++s) {
        std::snprintf(buf, sizeof buf, "%-18s", (m.seeds[s].substr(0, 16) + "..").c_str());
        out << buf;
        for (std::size_t k = 0; k < m.kinds.size(); ++k) {
            std::snprintf(buf, sizeof buf, " %13d/%-2d", m.passes[k][s], m.applicable[k][s]);
            out << buf;
        }
        out << '\n';
    }
    std::snprintf(buf, sizeof buf, "%-18s", "mean");
    out << buf;
    for (std::size_t k = 0; k < m.kinds.size(); ++k) {
        std::snprintf(buf, sizeof buf, " %16.2f", m.mean_passes(k));
        out << buf;
    }
    out << '\n';
    return out.str();
}

}  // namespace chaoscrypt
