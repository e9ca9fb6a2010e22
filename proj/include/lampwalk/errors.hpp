#pragma once

#include <stdexcept>
#include <string>

namespace lampwalk {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A configured resource cap (vertices, orbit size, steps) was hit.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class PreconditionFailed : public Error {
 public:
  using Error::Error;
};

// Hair probe exhausted its depth cap without reaching the skeleton.
class Undetermined : public Error {
 public:
  using Error::Error;
};

class StructuralAssertFailed : public Error {
 public:
  using Error::Error;
};

class ZeroBase : public Error {
 public:
  using Error::Error;
};

class MissingTailBound : public Error {
 public:
  using Error::Error;
};

class PropertySelfTestFailed : public Error {
 public:
  using Error::Error;
};

class SearchExhausted : public Error {
 public:
  SearchExhausted(const std::string& what, std::size_t frontier)
      : Error(what), frontier_(frontier) {}
  std::size_t frontier() const { return frontier_; }

 private:
  std::size_t frontier_;
};

}  // namespace lampwalk
