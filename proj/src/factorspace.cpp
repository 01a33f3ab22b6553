#include "sng/factorspace.hpp"

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace sng::factorspace {
namespace {

std::optional<double> letter_mass(char c) {
    switch (c) {
        case 'B': return 11.0;
        case 'C': return 12.0;
        case 'N': return 14.0;
        case 'O': return 16.0;
        case 'F': return 19.0;
        case 'P': return 31.0;
        case 'S': return 32.0;
        case 'I': return 53.0;
        default: return std::nullopt;
    }
}

std::size_t count_letter(const Tokens& t, char c) {
    std::size_t n = 0;
    for (char x : t.letters)
        if (x == c) ++n;
    return n;
}

}  // namespace

std::optional<Tokens> tokenize(const Instance& x) {
    if (x.empty()) return std::nullopt;
    Tokens t;
    std::size_t depth = 0;
    for (char c : x) {
        if (c == '(') {
            ++depth;
            ++t.branches;
            t.depth = std::max(t.depth, depth);
        } else if (c == ')') {
            if (depth == 0) return std::nullopt;
            --depth;
        } else if (letter_mass(c)) {
            t.letters += c;
        } else {
            return std::nullopt;
        }
    }
    if (depth != 0 || t.letters.empty()) return std::nullopt;
    return t;
}

std::optional<double> weight_like(const Instance& x) {
    const auto t = tokenize(x);
    if (!t) return std::nullopt;
    double sum = 0.0;
    for (char c : t->letters) sum += *letter_mass(c);
    return sum;
}

std::optional<double> affinity_like(const Instance& x) {
    const auto t = tokenize(x);
    if (!t) return std::nullopt;
    double weight = 0.0;
    for (char c : t->letters) weight += *letter_mass(c);
    const double n = static_cast<double>(t->letters.size());
    const double z = (2.0 * count_letter(*t, 'N') + 1.5 * count_letter(*t, 'O') +
                      1.0 * count_letter(*t, 'F') + 0.5 * count_letter(*t, 'S') -
                      0.25 * count_letter(*t, 'C') - 0.5 * count_letter(*t, 'I') +
                      1.25 * static_cast<double>(t->branches) - 0.04 * weight) /
                     (1.0 + 0.1 * n);
    return 3.0 + 7.0 / (1.0 + std::exp(-z));
}

std::optional<double> sas_like(const Instance& x) {
    const auto t = tokenize(x);
    if (!t) return std::nullopt;
    const double load = static_cast<double>(t->letters.size()) / 24.0 +
                        0.35 * static_cast<double>(t->branches) +
                        0.2 * static_cast<double>(t->depth);
    return 7.0 * (1.0 - std::exp(-load));
}

double jaccard_novelty(const Instance& x, const std::set<Instance>& known) {
    if (known.empty()) throw std::invalid_argument("jaccard_novelty: empty known set");
    const auto tx = tokenize(x);
    if (!tx) throw std::invalid_argument("jaccard_novelty: invalid instance");
    const std::set<char> sx(tx->letters.begin(), tx->letters.end());
    double total = 0.0;
    for (const auto& k : known) {
        const auto tk = tokenize(k);
        if (!tk) throw std::invalid_argument("jaccard_novelty: invalid known instance");
        const std::set<char> sk(tk->letters.begin(), tk->letters.end());
        std::size_t inter = 0;
        for (char c : sx)
            if (sk.count(c)) ++inter;
        const std::size_t uni = sx.size() + sk.size() - inter;
        total += static_cast<double>(inter) / static_cast<double>(uni);
    }
    return total / static_cast<double>(known.size());
}

std::vector<Instance> random_instances(std::size_t count, std::uint64_t seed) {
    static constexpr char kLetters[] = {'B', 'C', 'N', 'O', 'F', 'P', 'S', 'I'};
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> len(4, 28);
    std::uniform_int_distribution<int> letter(0, 7);
    std::uniform_int_distribution<int> branch(0, 9);
    std::vector<Instance> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        Instance s;
        const int n = len(rng);
        int open = 0;
        for (int j = 0; j < n; ++j) {
            const int b = branch(rng);
            if (b == 0 && j + 2 < n) {
                s += '(';
                ++open;
            } else if (b == 1 && open > 0 && !s.empty() && s.back() != '(') {
                s += ')';
                --open;
            }
            s += kLetters[letter(rng)];
        }
        while (open-- > 0) s += ')';
        out.push_back(std::move(s));
    }
    return out;
}

Background background() {
    Background b;
    b.factors["affinity"] = affinity_like;
    b.factors["molwt"] = weight_like;
    b.factors["sas"] = sas_like;
    return b;
}

FactorSpecification default_spec() {
    return FactorSpecification({"affinity", "molwt", "sas"},
                               IntervalVector{{3.0, 10.0}, {200.0, 700.0}, {0.0, 7.0}},
                               {Direction::Maximize, Direction::Free, Direction::Minimize});
}

std::map<Instance, std::optional<double>> SubprocessAdapter::invoke(
    const std::string& factor, const std::vector<Instance>& batch) {
    std::map<Instance, std::optional<double>> result;
    std::vector<Instance> pending;
    for (const auto& enc : batch) {
        const auto it = cache_.find({factor, enc});
        if (it != cache_.end())
            result[enc] = it->second;
        else
            pending.push_back(enc);
    }

    for (std::size_t start = 0; start < pending.size(); start += max_batch_) {
        const std::size_t end = std::min(pending.size(), start + max_batch_);

        const auto tmp = std::filesystem::temp_directory_path() /
                         ("sng-adapter-" + std::to_string(::getpid()) + "-" +
                          std::to_string(start) + ".in");
        {
            std::ofstream f(tmp);
            for (std::size_t i = start; i < end; ++i) f << pending[i] << '\n';
        }
        const std::string cmd = command_ + " " + factor + " < " + tmp.string();
        FILE* pipe = ::popen(cmd.c_str(), "r");
        if (!pipe) {
            std::filesystem::remove(tmp);
            for (std::size_t i = start; i < end; ++i) result[pending[i]] = std::nullopt;
            continue;
        }
        std::string output;
        char buf[4096];
        std::size_t got;
        while ((got = ::fread(buf, 1, sizeof buf, pipe)) > 0) output.append(buf, got);
        const int status = ::pclose(pipe);
        std::filesystem::remove(tmp);

        std::map<Instance, std::optional<double>> parsed;
        if (status == 0) {
            std::istringstream lines(output);
            std::string line;
            while (std::getline(lines, line)) {
                const auto tab = line.find('\t');
                if (tab == std::string::npos) continue;
                const std::string enc = line.substr(0, tab);
                const std::string val = line.substr(tab + 1);
                if (val == "ERR") {
                    parsed[enc] = std::nullopt;
                } else {
                    try {
                        parsed[enc] = std::stod(val);
                    } catch (...) {
                        parsed[enc] = std::nullopt;
                    }
                }
            }
        }
        // nonzero exit or missing line: that instance is undefined
        for (std::size_t i = start; i < end; ++i) {
            const auto it = parsed.find(pending[i]);
            const auto value = it == parsed.end() ? std::nullopt : it->second;
            result[pending[i]] = value;
            cache_[{factor, pending[i]}] = value;
        }
    }
    return result;
}

FactorFn SubprocessAdapter::factor_fn(const std::string& factor) {
    return [this, factor](const Instance& x) { return invoke(factor, {x}).at(x); };
}

}  // namespace sng::factorspace
