#pragma once

#include <gtest/gtest.h>

#include "phqm/matrix.hpp"

namespace phqm::test {

inline double max_abs_diff(const SquareMatrix& a, const SquareMatrix& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
    return worst;
}

inline double max_abs_diff(const Vector& a, const Vector& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

#define EXPECT_MATRIX_NEAR(a, b, tol) EXPECT_LE(::phqm::test::max_abs_diff((a), (b)), (tol))

#define EXPECT_THROW_KIND(stmt, expected_kind)                         \
    do {                                                               \
        try {                                                          \
            stmt;                                                      \
            ADD_FAILURE() << "expected " #expected_kind;               \
        } catch (const ::phqm::Error& e) {                             \
            EXPECT_EQ(e.kind(), ::phqm::ErrorKind::expected_kind) << e.what(); \
        }                                                              \
    } while (0)

}  // namespace phqm::test
