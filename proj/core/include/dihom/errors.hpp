#ifndef DIHOM_ERRORS_HPP
#define DIHOM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dihom {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// An enumeration was demanded of an object set that is not finitely
/// enumerable (free commutative monoid carriers and the like).
class InfiniteError : public Error {
public:
  explicit InfiniteError(const std::string& what) : Error(what) {}
};

/// The hom recursion exceeded the configured depth bound.
class ShapeTooDeepError : public Error {
public:
  explicit ShapeTooDeepError(const std::string& what) : Error(what) {}
};

/// A quotient was requested along a subset not closed under faces and
/// degeneracies.
class NotClosedError : public Error {
public:
  explicit NotClosedError(const std::string& what) : Error(what) {}
};

/// A composition table failed to be total, associative or unital.
class InvalidCategoryError : public Error {
public:
  explicit InvalidCategoryError(const std::string& what) : Error(what) {}
};

/// An operation requiring a basepoint was applied to an unpointed object.
class NoBasepointError : public Error {
public:
  explicit NoBasepointError(const std::string& what) : Error(what) {}
};

/// Tuple entries do not share the expected shape or target dimension.
class DimensionMismatchError : public Error {
public:
  explicit DimensionMismatchError(const std::string& what) : Error(what) {}
};

/// No permutation of the tuple yields a sorted representative.
class NoSortError : public Error {
public:
  explicit NoSortError(const std::string& what) : Error(what) {}
};

/// Malformed serialized input.
class ParseError : public Error {
public:
  explicit ParseError(const std::string& what) : Error(what) {}
};

} // namespace dihom

#endif
