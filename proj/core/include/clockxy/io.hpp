#pragma once

#include <stdexcept>
#include <string>

#include "clockxy/lattice.hpp"

namespace clockxy {

class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class io_version_error : public io_error {
 public:
  using io_error::io_error;
};
class io_corrupt_error : public io_error {
 public:
  using io_error::io_error;
};
class io_dimension_error : public io_error {
 public:
  using io_error::io_error;
};

// Field container: versioned header (shape, epsilon, n_states, window,
// site count) followed by the state indices. Paths ending in ".json" use
// the JSON variant for inspection; anything else uses the little-endian
// binary variant with 32-bit indices.
void save_field(const SpinField& field, const std::string& path);
SpinField load_field(const std::string& path);

}  // namespace clockxy
