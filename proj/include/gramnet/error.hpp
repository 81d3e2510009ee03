#pragma once

#include <stdexcept>
#include <string>

namespace gramnet {

// Error categories map onto the CLI exit codes: config 1, data 2, internal 3.

struct config_error : std::runtime_error {
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

struct data_error : std::runtime_error {
  explicit data_error(const std::string& what) : std::runtime_error(what) {}
};

struct internal_error : std::runtime_error {
  explicit internal_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gramnet
