#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "bezout/parser.hpp"
#include "bezout/poly.hpp"
#include "support/print.hpp"

namespace bezout::testing {

struct Dsl {
  Ring ring;
  std::vector<std::string> vars;

  ModuleVector operator()(std::string_view text, std::size_t rank = 1) const {
    return parse_vector(text, ring, vars, rank);
  }
  std::vector<ModuleVector> list(std::initializer_list<std::string_view> texts, std::size_t rank = 1) const {
    std::vector<ModuleVector> out;
    for (auto t : texts) out.push_back((*this)(t, rank));
    return out;
  }
  std::string show(const ModuleVector& v) const { return format_vector(v, vars); }
  Element c(long v) const { return ring.from_integer(v); }
};

}  // namespace bezout::testing
