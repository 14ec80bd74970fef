#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace chen {

/// Text that does not match an input grammar; carries the byte offset.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Well-formed text whose content is rejected (bad CSV shape, unknown names).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace chen
