#pragma once

#include <stdexcept>
#include <string>

namespace atri
{

/** @brief Base class of every error raised by the library */
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/** @brief Native document violates the line grammar */
class SyntaxError : public Error
{
public:
    SyntaxError(int line, const std::string& msg)
        : Error("line " + std::to_string(line) + ": " + msg), line_{line}
    {
    }
    /** @brief 1-based line number of the offending line (0 if none) */
    int line() const noexcept { return line_; }

private:
    int line_;
};

/** @brief A face gluing is not an involution, or a face is left free */
class BadGluing : public Error
{
public:
    using Error::Error;
};

/** @brief A face gluing preserves the orientation of the shared face */
class NonOrientable : public Error
{
public:
    using Error::Error;
};

/** @brief A vertex link is not a torus */
class BadCuspLink : public Error
{
public:
    using Error::Error;
};

/** @brief A segment list does not describe a closed normal curve */
class InvalidCurve : public Error
{
public:
    using Error::Error;
};

/** @brief Homology basis construction did not produce a unimodular pair */
class BasisFailure : public Error
{
public:
    using Error::Error;
};

/** @brief Two curves passed to a pairing live on different cusps */
class DifferentCusps : public Error
{
public:
    using Error::Error;
};

/** @brief Constraint matrix rank disagrees with the cusp count */
class RankAnomaly : public Error
{
public:
    using Error::Error;
};

/** @brief The dense simplex routine lost feasibility or cycled */
class LPNumericalFailure : public Error
{
public:
    using Error::Error;
};

/** @brief Curve deformations failed to span the tangent space */
class SpanDeficiency : public Error
{
public:
    using Error::Error;
};

/** @brief An angle is too close to 0 or pi for shape evaluation */
class DegenerateTetrahedron : public Error
{
public:
    using Error::Error;
};

/** @brief Dehn filling coefficients are not coprime */
class NotCoprime : public Error
{
public:
    using Error::Error;
};

/** @brief An angle vector violates the linear constraints or the box */
class NotFeasible : public Error
{
public:
    using Error::Error;
};

/** @brief The angle polytope (or a slice of it) is empty */
class Infeasible : public Error
{
public:
    using Error::Error;
};

}  // namespace atri
