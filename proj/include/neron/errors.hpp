#pragma once

#include <stdexcept>
#include <string>

namespace neron {

// Base of every error the library raises on purpose.
class error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class parse_error : public error {
  public:
    using error::error;
};

class not_unipotent : public error {
  public:
    using error::error;
};

class not_quasi_unipotent : public error {
  public:
    using error::error;
};

class window_too_small : public error {
  public:
    using error::error;
};

class inclusion_violated : public error {
  public:
    using error::error;
};

class degree_out_of_range : public error {
  public:
    using error::error;
};

class generators_not_found : public error {
  public:
    using error::error;
};

class not_homogeneous : public error {
  public:
    using error::error;
};

class infeasible : public error {
  public:
    using error::error;
};

class invalid_datum : public error {
  public:
    using error::error;
};

class io_error : public error {
  public:
    using error::error;
};

} // namespace neron
