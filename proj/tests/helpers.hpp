#pragma once

#include <initializer_list>
#include <optional>
#include <utility>

#include "errors.hpp"
#include "matrix.hpp"
#include "rat.hpp"

namespace testutil {

inline latdist::Rat rt(const char* text) { return latdist::parse_rat(text); }

inline latdist::RatMatrix mat(std::initializer_list<std::initializer_list<const char*>> rows) {
    const int r = static_cast<int>(rows.size());
    const int c = r == 0 ? 0 : static_cast<int>(rows.begin()->size());
    latdist::RatMatrix m(r, c);
    int i = 0;
    for (const auto& row : rows) {
        int j = 0;
        for (const char* cell : row) m(i, j++) = rt(cell);
        ++i;
    }
    return m;
}

inline latdist::RatVec vec(std::initializer_list<const char*> cells) {
    latdist::RatVec v;
    for (const char* cell : cells) v.push_back(rt(cell));
    return v;
}

/** Error class thrown by f, or nullopt when f completes. */
template <typename F>
std::optional<latdist::errc> thrown_code(F&& f) {
    try {
        std::forward<F>(f)();
    } catch (const latdist::error& e) {
        return e.code();
    }
    return std::nullopt;
}

}  // namespace testutil
