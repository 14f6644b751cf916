#pragma once

#include <stdexcept>
#include <string>

namespace stopforge {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Filesystem / stream failures.
class IoError : public Error {
 public:
  using Error::Error;
};

// Malformed or inconsistent input data (file contents, config values).
class DataError : public Error {
 public:
  using Error::Error;
};

}  // namespace stopforge
