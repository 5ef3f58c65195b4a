#ifndef STREAMLAT_ERROR_HPP
#define STREAMLAT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace streamlat {

// Input violated a documented invariant (bad trace, bad segmentation, ...).
// The CLI maps this to exit code 1.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// File could not be opened/read/written. The CLI maps this to exit code 2.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace streamlat

#endif  // STREAMLAT_ERROR_HPP
