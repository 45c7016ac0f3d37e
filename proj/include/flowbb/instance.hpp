#ifndef FLOWBB_INSTANCE_HPP
#define FLOWBB_INSTANCE_HPP

#include <cctype>
#include <cstdint>
#include <istream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace flowbb {

/// A parse failure carrying the 1-based line/column of the offending token.
struct ParseError : std::runtime_error {
    ParseError(const std::string& what, int line, int column)
        : std::runtime_error("parse error at line " + std::to_string(line) + ", column "
                             + std::to_string(column) + ": " + what),
          line(line), column(column) {}
    int line;
    int column;
};

/// A permutation flow-shop instance: n jobs, m machines, integer processing
/// times. tail(j,k) (work strictly after machine k for job j) is precomputed
/// since the bounding routines query it constantly.
class Instance {
public:
    Instance(int jobs, int machines, std::vector<int> times)
        : n_(jobs), m_(machines), p_(std::move(times)) {
        if (n_ < 1 || m_ < 1)
            throw std::invalid_argument("instance dimensions must be positive");
        if (p_.size() != static_cast<std::size_t>(n_) * m_)
            throw std::invalid_argument("processing-time matrix has wrong shape");
        for (int t : p_)
            if (t < 0) throw std::invalid_argument("negative processing time");
        tails_.resize(p_.size());
        for (int j = 0; j < n_; ++j) {
            int acc = 0;
            for (int k = m_ - 1; k >= 0; --k) {
                tails_[idx(j, k)] = acc;
                acc += p_[idx(j, k)];
            }
        }
    }

    int jobs() const { return n_; }
    int machines() const { return m_; }

    /// Processing time of job j on machine k.
    int p(int j, int k) const { return p_[idx(j, k)]; }

    /// Total processing time of job j on machines strictly after k.
    int tail(int j, int k) const { return tails_[idx(j, k)]; }

    /// Sum of processing times of job j over all machines.
    int job_load(int j) const { return p_[idx(j, 0)] + tails_[idx(j, 0)]; }

    bool operator==(const Instance& other) const {
        return n_ == other.n_ && m_ == other.m_ && p_ == other.p_;
    }

private:
    std::size_t idx(int j, int k) const { return static_cast<std::size_t>(j) * m_ + k; }

    int n_;
    int m_;
    std::vector<int> p_;
    std::vector<int> tails_;
};

using Permutation = std::vector<int>;

/// Per-machine completion times of a scheduled prefix. All-zero for the empty
/// prefix; r[k] is non-decreasing in k.
using Heads = std::vector<int>;

/// Completion times after appending `job` to the prefix described by `heads`:
/// r'[k] = max(r'[k-1], r[k]) + p[job][k].
inline Heads child_heads(const Instance& inst, const Heads& heads, int job) {
    Heads out(inst.machines());
    int prev = 0;
    for (int k = 0; k < inst.machines(); ++k) {
        prev = std::max(prev, heads[k]) + inst.p(job, k);
        out[k] = prev;
    }
    return out;
}

/// Makespan of a complete permutation via the standard recurrence.
inline int makespan(const Instance& inst, const Permutation& perm) {
    Heads heads(inst.machines(), 0);
    for (int job : perm) heads = child_heads(inst, heads, job);
    return heads.back();
}

namespace detail {

// Token scanner tracking line/column for parse diagnostics.
class Tokenizer {
public:
    explicit Tokenizer(std::istream& in) : in_(in) {}

    // Reads the next whitespace-delimited token; empty string at EOF.
    std::string next() {
        skip_space();
        tok_line_ = line_;
        tok_col_ = col_;
        std::string tok;
        int c;
        while ((c = in_.peek()) != EOF && !std::isspace(c)) {
            tok.push_back(static_cast<char>(in_.get()));
            ++col_;
        }
        return tok;
    }

    int expect_int(const char* what) {
        std::string tok = next();
        if (tok.empty()) fail(std::string("unexpected end of input, expected ") + what);
        try {
            std::size_t pos = 0;
            long v = std::stol(tok, &pos);
            if (pos != tok.size()) throw std::invalid_argument(tok);
            return static_cast<int>(v);
        } catch (const std::exception&) {
            fail("expected " + std::string(what) + ", got '" + tok + "'");
        }
        return 0;  // unreachable
    }

    // Skips tokens until one parses as an integer; used to step over Taillard
    // header prose. Returns false at EOF.
    bool seek_int() {
        for (;;) {
            skip_space();
            if (in_.peek() == EOF) return false;
            std::streampos pos = in_.tellg();
            int saved_line = line_, saved_col = col_;
            std::string tok = next();
            try {
                std::size_t n = 0;
                (void)std::stol(tok, &n);
                if (n == tok.size()) {
                    in_.seekg(pos);
                    line_ = saved_line;
                    col_ = saved_col;
                    return true;
                }
            } catch (const std::exception&) {
            }
        }
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, tok_line_, tok_col_);
    }

private:
    void skip_space() {
        int c;
        while ((c = in_.peek()) != EOF && std::isspace(c)) {
            in_.get();
            if (c == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
        }
    }

    std::istream& in_;
    int line_ = 1;
    int col_ = 1;
    int tok_line_ = 1;
    int tok_col_ = 1;
};

}  // namespace detail

enum class InstanceFormat { simple, taillard };

/// Simple format: "n m" then n rows of m times (job-major).
/// Taillard format: prose header, then n m seed ub lb, then the matrix
/// machine-major (m rows of n times). Whitespace is free-form in both.
inline Instance parse_instance(std::istream& in, InstanceFormat format) {
    detail::Tokenizer tok(in);
    int n = 0, m = 0;
    if (format == InstanceFormat::taillard) {
        if (!tok.seek_int()) tok.fail("missing Taillard header values");
        n = tok.expect_int("job count");
        m = tok.expect_int("machine count");
        tok.expect_int("initial seed");
        tok.expect_int("upper bound");
        tok.expect_int("lower bound");
        if (!tok.seek_int()) tok.fail("missing processing-time matrix");
    } else {
        n = tok.expect_int("job count");
        m = tok.expect_int("machine count");
    }
    if (n < 1 || m < 1) tok.fail("dimensions must be positive");

    std::vector<int> p(static_cast<std::size_t>(n) * m);
    if (format == InstanceFormat::taillard) {
        for (int k = 0; k < m; ++k)
            for (int j = 0; j < n; ++j)
                p[static_cast<std::size_t>(j) * m + k] = tok.expect_int("processing time");
    } else {
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < m; ++k)
                p[static_cast<std::size_t>(j) * m + k] = tok.expect_int("processing time");
    }
    for (int t : p)
        if (t < 0) tok.fail("negative processing time");
    std::string extra = tok.next();
    if (!extra.empty()) tok.fail("trailing data after matrix: '" + extra + "'");
    return Instance(n, m, std::move(p));
}

inline Instance parse_instance(const std::string& text, InstanceFormat format) {
    std::istringstream in(text);
    return parse_instance(in, format);
}

namespace detail {

// Taillard's uniform generator: Lehmer LCG, multiplier 16807, modulus 2^31-1,
// Schrage decomposition. Reproduces the published benchmark files.
class TaillardRng {
public:
    explicit TaillardRng(std::int32_t seed) : state_(seed) {
        if (seed <= 0 || seed >= 2147483647)
            throw std::invalid_argument("Taillard seed must be in (0, 2^31-1)");
    }

    int uniform(int low, int high) {
        constexpr std::int64_t m = 2147483647, a = 16807, q = 127773, r = 2836;
        std::int64_t k = state_ / q;
        state_ = a * (state_ % q) - r * k;
        if (state_ < 0) state_ += m;
        double u = static_cast<double>(state_) / static_cast<double>(m);
        return low + static_cast<int>(u * (high - low + 1));
    }

private:
    std::int64_t state_;
};

}  // namespace detail

/// Deterministic Taillard-style instance: times uniform in [1,99], drawn
/// machine-major (all of machine 0 first). Matches the published benchmark
/// files for their time seeds.
inline Instance generate_instance(int jobs, int machines, std::int32_t seed) {
    if (jobs < 1 || machines < 1)
        throw std::invalid_argument("instance dimensions must be positive");
    detail::TaillardRng rng(seed);
    std::vector<int> p(static_cast<std::size_t>(jobs) * machines);
    for (int k = 0; k < machines; ++k)
        for (int j = 0; j < jobs; ++j)
            p[static_cast<std::size_t>(j) * machines + k] = rng.uniform(1, 99);
    return Instance(jobs, machines, std::move(p));
}

/// Renders an instance in the simple format.
inline std::string to_simple_format(const Instance& inst) {
    std::ostringstream out;
    out << inst.jobs() << ' ' << inst.machines() << '\n';
    for (int j = 0; j < inst.jobs(); ++j) {
        for (int k = 0; k < inst.machines(); ++k) {
            if (k) out << ' ';
            out << inst.p(j, k);
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace flowbb

#endif  // FLOWBB_INSTANCE_HPP
