#pragma once

// Exponent sets S with an evaluable characteristic function u(n), a textual
// grammar, and per-prime families assigning a set S_n to the n-th prime.
//
// Grammar (ASCII, case-sensitive):
//   set    := "finite:" ints | "exclude:" ints | "upto:" int | "all"
//           | "geq:" int | "squarefree"
//   ints   := int ("," int)*          int: base-10 positive integer
//   family := "prefix" | "list:" set (";" set)* ":default:" set

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "expos/errors.hpp"
#include "expos/factorization.hpp"

namespace expos {

enum class SetKind {
    Finite,               // explicit sorted elements
    Cofinite,             // all positive integers except an explicit list
    UpTo,                 // {1, ..., k}
    All,                  // every positive integer
    GeqThreshold,         // {k, k+1, ...}, k >= 2
    SquarefreeExponents,  // u(n) = 1 iff n is squarefree
};

class ExponentSet {
public:
    static ExponentSet finite(std::vector<std::uint64_t> elements) {
        normalize_list(elements, "finite");
        return ExponentSet(SetKind::Finite, std::move(elements), 0);
    }

    static ExponentSet cofinite(std::vector<std::uint64_t> excluded) {
        normalize_list(excluded, "exclude");
        return ExponentSet(SetKind::Cofinite, std::move(excluded), 0);
    }

    static ExponentSet up_to(std::uint64_t k) {
        if (k < 1) throw PreconditionError("upto: threshold k < 1");
        return ExponentSet(SetKind::UpTo, {}, k);
    }

    static ExponentSet all() { return ExponentSet(SetKind::All, {}, 0); }

    static ExponentSet geq_threshold(std::uint64_t k) {
        if (k < 1) throw PreconditionError("geq: threshold k < 1");
        if (k == 1) return all();  // {1,2,...} is the full set
        return ExponentSet(SetKind::GeqThreshold, {}, k);
    }

    static ExponentSet squarefree_exponents() {
        return ExponentSet(SetKind::SquarefreeExponents, {}, 0);
    }

    SetKind kind() const noexcept { return kind_; }
    const std::vector<std::uint64_t>& data() const noexcept { return data_; }
    std::uint64_t threshold() const noexcept { return k_; }

    // characteristic function u(n); total for every n >= 1
    bool contains(std::uint64_t n) const {
        if (n == 0) throw PreconditionError("u(n): n must be >= 1");
        if (n <= 64) return (mask_ >> (n - 1)) & 1u;
        return contains_generic(n);
    }

    bool contains_one() const noexcept { return mask_ & 1u; }

    // smallest element >= from, if any
    std::optional<std::uint64_t> next_element(std::uint64_t from) const {
        if (from == 0) from = 1;
        switch (kind_) {
            case SetKind::Finite: {
                auto it = std::lower_bound(data_.begin(), data_.end(), from);
                if (it == data_.end()) return std::nullopt;
                return *it;
            }
            case SetKind::Cofinite: {
                std::uint64_t m = from;
                while (std::binary_search(data_.begin(), data_.end(), m)) ++m;
                return m;
            }
            case SetKind::UpTo:
                if (from > k_) return std::nullopt;
                return from;
            case SetKind::All:
                return from;
            case SetKind::GeqThreshold:
                return std::max(from, k_);
            case SetKind::SquarefreeExponents: {
                std::uint64_t m = from;
                while (!trial_is_squarefree(m)) ++m;
                return m;
            }
        }
        return std::nullopt;
    }

    // largest element, nullopt when the set is unbounded
    std::optional<std::uint64_t> max_element() const {
        switch (kind_) {
            case SetKind::Finite: return data_.back();
            case SetKind::UpTo: return k_;
            default: return std::nullopt;
        }
    }

    // smallest D with u(i) = u(i-1) for every i > D; nullopt when the
    // difference sequence has unbounded support (SquarefreeExponents)
    std::optional<std::uint64_t> diff_support_end() const {
        switch (kind_) {
            case SetKind::Finite: return data_.back() + 1;
            case SetKind::Cofinite: return data_.back() + 1;
            case SetKind::UpTo: return k_ + 1;
            case SetKind::All: return 1;
            case SetKind::GeqThreshold: return k_;
            case SetKind::SquarefreeExponents: return std::nullopt;
        }
        return std::nullopt;
    }

    // smallest i >= 2 with u(i) != u(i-1); nullopt when u is constant
    std::optional<std::uint64_t> first_diff_index() const {
        if (kind_ == SetKind::SquarefreeExponents) return 4;  // u(4)=0, u(3)=1
        auto end = diff_support_end();
        for (std::uint64_t i = 2; i <= *end; ++i)
            if (contains(i) != contains(i - 1)) return i;
        return std::nullopt;
    }

    bool has_element_geq(std::uint64_t m) const {
        return next_element(m).has_value();
    }

    friend bool operator==(const ExponentSet& a, const ExponentSet& b) {
        return a.kind_ == b.kind_ && a.data_ == b.data_ && a.k_ == b.k_;
    }

private:
    ExponentSet(SetKind kind, std::vector<std::uint64_t> data, std::uint64_t k)
        : kind_(kind), data_(std::move(data)), k_(k) {
        for (std::uint64_t n = 1; n <= 64; ++n)
            if (contains_generic(n)) mask_ |= 1ULL << (n - 1);
    }

    static void normalize_list(std::vector<std::uint64_t>& v, const char* what) {
        if (v.empty())
            throw PreconditionError(std::string(what) + ": empty list");
        for (std::uint64_t e : v)
            if (e < 1) throw PreconditionError(std::string(what) + ": entries must be >= 1");
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }

    bool contains_generic(std::uint64_t n) const {
        switch (kind_) {
            case SetKind::Finite:
                return std::binary_search(data_.begin(), data_.end(), n);
            case SetKind::Cofinite:
                return !std::binary_search(data_.begin(), data_.end(), n);
            case SetKind::UpTo: return n <= k_;
            case SetKind::All: return true;
            case SetKind::GeqThreshold: return n >= k_;
            case SetKind::SquarefreeExponents: return trial_is_squarefree(n);
        }
        return false;
    }

    SetKind kind_;
    std::vector<std::uint64_t> data_;  // Finite: elements; Cofinite: excluded
    std::uint64_t k_ = 0;              // UpTo / GeqThreshold
    std::uint64_t mask_ = 0;           // membership bits for n = 1..64
};

// exact subset test; every kind is eventually empty, eventually full, or
// eventually the squarefree pattern, so compare prefixes plus tail classes
inline bool is_subset(const ExponentSet& a, const ExponentSet& b) {
    auto horizon = [](const ExponentSet& s) -> std::uint64_t {
        switch (s.kind()) {
            case SetKind::Finite:
            case SetKind::Cofinite: return s.data().back();
            case SetKind::UpTo:
            case SetKind::GeqThreshold: return s.threshold();
            default: return 1;
        }
    };
    auto tail_rank = [](const ExponentSet& s) -> int {
        switch (s.kind()) {
            case SetKind::Finite:
            case SetKind::UpTo: return 0;               // eventually empty
            case SetKind::SquarefreeExponents: return 1;
            default: return 2;                          // eventually full
        }
    };
    std::uint64_t h = std::max(horizon(a), horizon(b)) + 1;
    for (std::uint64_t n = 1; n <= h; ++n)
        if (a.contains(n) && !b.contains(n)) return false;
    return tail_rank(a) <= tail_rank(b);
}

namespace detail {

struct SpecCursor {
    std::string_view text;
    std::size_t base;  // offset of text within the original input

    std::uint64_t parse_uint(std::size_t& pos) const {
        if (pos >= text.size() || text[pos] < '0' || text[pos] > '9')
            throw ParseError("expected integer", base + pos);
        std::uint64_t v = 0;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
            std::uint64_t d = static_cast<std::uint64_t>(text[pos] - '0');
            if (v > (std::numeric_limits<std::uint64_t>::max() - d) / 10)
                throw ParseError("integer overflow", base + pos);
            v = v * 10 + d;
            ++pos;
        }
        return v;
    }
};

}  // namespace detail

inline ExponentSet parse_exponent_set(std::string_view text, std::size_t base = 0) {
    detail::SpecCursor cur{text, base};
    auto parse_int_list = [&](std::size_t pos, const char* what) {
        std::vector<std::uint64_t> vals;
        if (pos >= text.size())
            throw ParseError(std::string(what) + ": empty list", base + pos);
        for (;;) {
            std::uint64_t v = cur.parse_uint(pos);
            if (v < 1) throw ParseError("entries must be >= 1", base + pos);
            vals.push_back(v);
            if (pos == text.size()) break;
            if (text[pos] != ',')
                throw ParseError("expected ',' or end of list", base + pos);
            ++pos;
        }
        return vals;
    };

    if (text == "all") return ExponentSet::all();
    if (text == "squarefree") return ExponentSet::squarefree_exponents();
    if (text.starts_with("finite:"))
        return ExponentSet::finite(parse_int_list(7, "finite"));
    if (text.starts_with("exclude:"))
        return ExponentSet::cofinite(parse_int_list(8, "exclude"));
    if (text.starts_with("upto:")) {
        std::size_t pos = 5;
        std::uint64_t k = cur.parse_uint(pos);
        if (pos != text.size()) throw ParseError("trailing characters", base + pos);
        if (k < 1) throw ParseError("threshold k < 1", base + 5);
        return ExponentSet::up_to(k);
    }
    if (text.starts_with("geq:")) {
        std::size_t pos = 4;
        std::uint64_t k = cur.parse_uint(pos);
        if (pos != text.size()) throw ParseError("trailing characters", base + pos);
        if (k < 1) throw ParseError("threshold k < 1", base + 4);
        return ExponentSet::geq_threshold(k);
    }
    throw ParseError("unknown set kind (want finite:/exclude:/upto:/all/geq:/squarefree)", base);
}

inline std::string format_exponent_set(const ExponentSet& s) {
    auto join = [](const std::vector<std::uint64_t>& v) {
        std::string out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) out += ',';
            out += std::to_string(v[i]);
        }
        return out;
    };
    switch (s.kind()) {
        case SetKind::Finite: return "finite:" + join(s.data());
        case SetKind::Cofinite: return "exclude:" + join(s.data());
        case SetKind::UpTo: return "upto:" + std::to_string(s.threshold());
        case SetKind::All: return "all";
        case SetKind::GeqThreshold: return "geq:" + std::to_string(s.threshold());
        case SetKind::SquarefreeExponents: return "squarefree";
    }
    return {};
}

// Assignment of an exponent set S_n to the n-th prime.  The built-in
// "prefix" rule assigns S_n = {1,...,n}; an explicit list names a default
// tail set applied beyond the list so the rule is total.
class PerPrimeFamily {
public:
    static PerPrimeFamily prefix() { return PerPrimeFamily(); }

    static PerPrimeFamily explicit_list(std::vector<ExponentSet> list, ExponentSet tail) {
        if (list.empty())
            throw PreconditionError("family list: at least one set required");
        PerPrimeFamily f;
        f.prefix_ = false;
        f.list_ = std::move(list);
        f.tail_.push_back(std::move(tail));
        return f;
    }

    bool is_prefix() const noexcept { return prefix_; }
    const std::vector<ExponentSet>& list() const noexcept { return list_; }
    const ExponentSet& tail() const { return tail_.front(); }
    std::size_t list_size() const noexcept { return list_.size(); }

    // S_n for the n-th prime, n >= 1
    ExponentSet set_for(std::uint64_t n) const {
        if (n == 0) throw PreconditionError("family: index must be >= 1");
        if (prefix_) return ExponentSet::up_to(n);
        if (n <= list_.size()) return list_[n - 1];
        return tail_.front();
    }

    friend bool operator==(const PerPrimeFamily& a, const PerPrimeFamily& b) {
        return a.prefix_ == b.prefix_ && a.list_ == b.list_ && a.tail_ == b.tail_;
    }

private:
    PerPrimeFamily() = default;

    bool prefix_ = true;
    std::vector<ExponentSet> list_;
    std::vector<ExponentSet> tail_;  // singleton when prefix_ is false
};

inline PerPrimeFamily parse_family(std::string_view text) {
    if (text == "prefix") return PerPrimeFamily::prefix();
    if (!text.starts_with("list:"))
        throw ParseError("unknown family rule (want prefix or list:...)", 0);
    constexpr std::string_view kDefaultMark = ":default:";
    std::size_t mark = text.find(kDefaultMark);
    if (mark == std::string_view::npos)
        throw ParseError("family list: missing :default: tail set", text.size());
    std::string_view body = text.substr(5, mark - 5);
    std::string_view tail_spec = text.substr(mark + kDefaultMark.size());
    std::vector<ExponentSet> sets;
    std::size_t start = 0;
    while (true) {
        std::size_t semi = body.find(';', start);
        std::string_view one =
            semi == std::string_view::npos ? body.substr(start) : body.substr(start, semi - start);
        sets.push_back(parse_exponent_set(one, 5 + start));
        if (semi == std::string_view::npos) break;
        start = semi + 1;
    }
    ExponentSet tail = parse_exponent_set(tail_spec, mark + kDefaultMark.size());
    return PerPrimeFamily::explicit_list(std::move(sets), std::move(tail));
}

inline std::string format_family(const PerPrimeFamily& f) {
    if (f.is_prefix()) return "prefix";
    std::string out = "list:";
    for (std::size_t i = 0; i < f.list_size(); ++i) {
        if (i) out += ';';
        out += format_exponent_set(f.list()[i]);
    }
    out += ":default:";
    out += format_exponent_set(f.tail());
    return out;
}

}  // namespace expos
