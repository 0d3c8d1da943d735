#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lvt {

// Every error raised by the library derives from Error so callers (the CLI
// batch runners in particular) can catch them uniformly.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidTriple : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class DimensionTooSmall : public Error {
 public:
  using Error::Error;
};

class NotUnimodular : public Error {
 public:
  using Error::Error;
};

class InvalidMutationDatum : public Error {
 public:
  using Error::Error;
};

class EmptyPolynomial : public Error {
 public:
  using Error::Error;
};

class DegenerateSegment : public Error {
 public:
  using Error::Error;
};

class UnsupportedShape : public Error {
 public:
  using Error::Error;
};

class UnsupportedDim : public Error {
 public:
  using Error::Error;
};

// Raised by checked 64/128-bit lattice arithmetic instead of wrapping.
class ArithmeticOverflow : public Error {
 public:
  using Error::Error;
};

class SeedNotFound : public Error {
 public:
  SeedNotFound(std::size_t step, const std::string& what)
      : Error(what), step_(step) {}
  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

class AmbiguousSeed : public Error {
 public:
  AmbiguousSeed(std::size_t step, const std::string& what)
      : Error(what), step_(step) {}
  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

class IntegrityError : public Error {
 public:
  using Error::Error;
};

}  // namespace lvt
