#pragma once

#include <array>
#include <ostream>

#include "ring.hpp"

namespace quadrings {

/** Column vector of length 2 over a Ring. */
struct Vec2 {
    RingElem x, y;

    Vec2(RingElem x_, RingElem y_) : x(std::move(x_)), y(std::move(y_)) {
        if (x.ring() != y.ring())
            throw RingMismatchError("Vec2: entries from different rings");
    }

    const Ring& ring() const { return x.ring(); }

    bool operator==(const Vec2& o) const { return x == o.x && y == o.y; }
    bool operator!=(const Vec2& o) const { return !(*this == o); }
};

/** 2x2 matrix over a Ring, row-major: [[a, b], [c, d]].
 *
 * Throughout the library the columns of a matrix are the images of the basis
 * vectors (x, y), so  M * (x) takes the first column.
 */
class Mat2 {
public:
    Mat2(RingElem a, RingElem b, RingElem c, RingElem d)
        : e_{std::move(a), std::move(b), std::move(c), std::move(d)} {
        for (int i = 1; i < 4; ++i)
            if (e_[i].ring() != e_[0].ring())
                throw RingMismatchError("Mat2: entries from different rings");
    }

    static Mat2 from_ints(const Ring& R, const Int& a, const Int& b, const Int& c, const Int& d) {
        return Mat2(RingElem(R, a), RingElem(R, b), RingElem(R, c), RingElem(R, d));
    }

    static Mat2 identity(const Ring& R) { return from_ints(R, 1, 0, 0, 1); }
    static Mat2 zero(const Ring& R) { return from_ints(R, 0, 0, 0, 0); }
    static Mat2 scalar(const RingElem& s) {
        return Mat2(s, quadrings::zero(s.ring()), quadrings::zero(s.ring()), s);
    }

    const Ring& ring() const { return e_[0].ring(); }

    /** Row-major access: at(i, j) is row i, column j. */
    const RingElem& at(int i, int j) const { return e_[2 * i + j]; }

    RingElem det() const { return at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0); }
    RingElem trace() const { return at(0, 0) + at(1, 1); }

    bool is_invertible() const { return det().is_unit(); }

    /** Inverse via the adjugate; throws NotInvertibleError if det is not a unit. */
    Mat2 inverse() const {
        RingElem d = det();
        if (!d.is_unit())
            throw NotInvertibleError("Mat2::inverse: determinant " + d.str() +
                                     " is not a unit in " + ring().str());
        RingElem di = d.inverse();
        return Mat2(at(1, 1) * di, -at(0, 1) * di, -at(1, 0) * di, at(0, 0) * di);
    }

    Mat2 operator*(const Mat2& o) const {
        return Mat2(at(0, 0) * o.at(0, 0) + at(0, 1) * o.at(1, 0),
                    at(0, 0) * o.at(0, 1) + at(0, 1) * o.at(1, 1),
                    at(1, 0) * o.at(0, 0) + at(1, 1) * o.at(1, 0),
                    at(1, 0) * o.at(0, 1) + at(1, 1) * o.at(1, 1));
    }

    Vec2 operator*(const Vec2& v) const {
        return Vec2(at(0, 0) * v.x + at(0, 1) * v.y, at(1, 0) * v.x + at(1, 1) * v.y);
    }

    Mat2 operator+(const Mat2& o) const {
        return Mat2(at(0, 0) + o.at(0, 0), at(0, 1) + o.at(0, 1), at(1, 0) + o.at(1, 0),
                    at(1, 1) + o.at(1, 1));
    }

    Mat2 operator-(const Mat2& o) const {
        return Mat2(at(0, 0) - o.at(0, 0), at(0, 1) - o.at(0, 1), at(1, 0) - o.at(1, 0),
                    at(1, 1) - o.at(1, 1));
    }

    Mat2 operator*(const RingElem& s) const {
        return Mat2(at(0, 0) * s, at(0, 1) * s, at(1, 0) * s, at(1, 1) * s);
    }

    Mat2 operator-() const { return Mat2(-at(0, 0), -at(0, 1), -at(1, 0), -at(1, 1)); }

    Mat2 transpose() const { return Mat2(at(0, 0), at(1, 0), at(0, 1), at(1, 1)); }

    bool operator==(const Mat2& o) const {
        for (int i = 0; i < 4; ++i)
            if (e_[i] != o.e_[i]) return false;
        return true;
    }
    bool operator!=(const Mat2& o) const { return !(*this == o); }

    bool is_scalar() const { return at(0, 1).is_zero() && at(1, 0).is_zero() && at(0, 0) == at(1, 1); }

    friend std::ostream& operator<<(std::ostream& os, const Mat2& m) {
        return os << "[[" << m.at(0, 0) << "," << m.at(0, 1) << "],[" << m.at(1, 0) << ","
                  << m.at(1, 1) << "]]";
    }

private:
    std::array<RingElem, 4> e_;
};

/** A GL2 element: a 2x2 matrix whose determinant is a unit, checked on construction. */
class GL2 {
public:
    explicit GL2(Mat2 m) : m_(std::move(m)) {
        if (!m_.is_invertible())
            throw NotInvertibleError("GL2: determinant " + m_.det().str() + " is not a unit in " +
                                     m_.ring().str());
    }

    static GL2 from_ints(const Ring& R, const Int& a, const Int& b, const Int& c, const Int& d) {
        return GL2(Mat2::from_ints(R, a, b, c, d));
    }

    static GL2 identity(const Ring& R) { return GL2(Mat2::identity(R)); }

    const Mat2& mat() const { return m_; }
    RingElem det() const { return m_.det(); }
    GL2 inverse() const { return GL2(m_.inverse()); }
    GL2 operator*(const GL2& o) const { return GL2(m_ * o.m_); }

    bool operator==(const GL2& o) const { return m_ == o.m_; }

    friend std::ostream& operator<<(std::ostream& os, const GL2& g) { return os << g.m_; }

private:
    Mat2 m_;
};

/** Every element of GL2(R) for finite R, in lexicographic entry order. */
inline std::vector<Mat2> all_gl2(const Ring& R) {
    std::vector<Mat2> out;
    auto xs = elements_of(R);
    for (const auto& a : xs)
        for (const auto& b : xs)
            for (const auto& c : xs)
                for (const auto& d : xs) {
                    Mat2 m(a, b, c, d);
                    if (m.is_invertible()) out.push_back(m);
                }
    return out;
}

/** Generators of GL2(R) for finite R: the two standard SL2 generators plus
 * diag(1, u) over the units u.
 */
inline std::vector<Mat2> gl2_generators(const Ring& R) {
    std::vector<Mat2> gens;
    gens.push_back(Mat2::from_ints(R, 1, 1, 0, 1));
    gens.push_back(Mat2::from_ints(R, 0, -1, 1, 0));
    for (const RingElem& u : units_of(R))
        if (u != one(R)) gens.push_back(Mat2(one(R), zero(R), zero(R), u));
    return gens;
}

} // namespace quadrings
