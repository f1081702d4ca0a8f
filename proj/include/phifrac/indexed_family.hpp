#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "phifrac/error.hpp"

namespace phifrac {

/// An infinite sequence i -> T, i = 1, 2, ...: a materialized prefix followed
/// by a tail rule (periodic repetition of a finite list, or a generator).
template <class T>
class IndexedFamily {
public:
    using Generator = std::function<T(std::size_t)>;

    static IndexedFamily constant(T value) { return periodic({}, {std::move(value)}); }

    static IndexedFamily periodic(std::vector<T> prefix, std::vector<T> repeat) {
        if (repeat.empty()) fail(ErrorKind::InvalidInput, "periodic tail must be nonempty");
        IndexedFamily f;
        f.prefix_ = std::move(prefix);
        f.tail_ = Repeat{std::move(repeat)};
        return f;
    }

    /// `gen` receives the absolute 1-based index.
    static IndexedFamily generated(Generator gen, std::vector<T> prefix = {}) {
        if (!gen) fail(ErrorKind::InvalidInput, "generator must be callable");
        IndexedFamily f;
        f.prefix_ = std::move(prefix);
        f.tail_ = std::move(gen);
        return f;
    }

    /// 1-based element access.
    T at(std::size_t i) const {
        if (i == 0) fail(ErrorKind::InvalidInput, "indexed families start at 1");
        if (i <= prefix_.size()) return prefix_[i - 1];
        if (const auto* rep = std::get_if<Repeat>(&tail_)) {
            const std::size_t j = (i - prefix_.size() - 1) % rep->items.size();
            return rep->items[j];
        }
        return std::get<Generator>(tail_)(i);
    }

    /// Elements 1..k.
    std::vector<T> first(std::size_t k) const {
        std::vector<T> out;
        out.reserve(k);
        for (std::size_t i = 1; i <= k; ++i) out.push_back(at(i));
        return out;
    }

    const std::vector<T>& prefix() const noexcept { return prefix_; }
    bool is_periodic() const noexcept { return std::holds_alternative<Repeat>(tail_); }
    const std::vector<T>& repeat() const { return std::get<Repeat>(tail_).items; }

    /// Elementwise image under `fn`, keeping the prefix/tail structure.
    template <class Fn>
    auto transform(Fn fn) const -> IndexedFamily<std::invoke_result_t<Fn, const T&>> {
        using U = std::invoke_result_t<Fn, const T&>;
        std::vector<U> pre;
        pre.reserve(prefix_.size());
        for (const T& v : prefix_) pre.push_back(fn(v));
        if (const auto* rep = std::get_if<Repeat>(&tail_)) {
            std::vector<U> items;
            for (const T& v : rep->items) items.push_back(fn(v));
            return IndexedFamily<U>::periodic(std::move(pre), std::move(items));
        }
        auto gen = std::get<Generator>(tail_);
        return IndexedFamily<U>::generated([gen, fn](std::size_t i) { return fn(gen(i)); },
                                           std::move(pre));
    }

private:
    struct Repeat {
        std::vector<T> items;
    };

    IndexedFamily() = default;

    std::vector<T> prefix_;
    std::variant<Repeat, Generator> tail_;
};

} // namespace phifrac
