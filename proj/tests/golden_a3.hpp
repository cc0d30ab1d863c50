#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "fusionq/fusion.hpp"

namespace golden {

// "-2w1+w2" -> -V_{2ω̂_1+ω̂_2}; "0" -> zero element.
inline fusionq::FusionElement parse_cell(const std::string& s, int rank) {
  if (s == "0") return {};
  std::size_t pos = 0;
  int sign = 1;
  if (s[0] == '-') {
    sign = -1;
    pos = 1;
  }
  std::vector<int> c(rank + 1, 0);
  std::stringstream ss(s.substr(pos));
  std::string term;
  while (std::getline(ss, term, '+')) {
    const auto w = term.find('w');
    const int coef = w == 0 ? 1 : std::stoi(term.substr(0, w));
    c[std::stoi(term.substr(w + 1))] += coef;
  }
  return fusionq::FusionElement::basis(fusionq::AffineWeight(c), sign);
}

inline const std::vector<std::vector<std::string>> kA3Level3 = {
    {"3w0", "3w0", "3w0"},
    {"2w0+w1", "2w0+w2", "2w0+w3"},
    {"w0+2w1", "w0+2w2", "w0+2w3"},
    {"3w1", "3w2", "3w3"},
    {"0", "0", "0"},
    {"0", "0", "0"},
    {"0", "0", "0"},
    {"-3w1", "3w2", "-3w3"},
    {"-2w1+w2", "w0+2w2", "-w2+2w3"},
    {"-w1+2w2", "2w0+w2", "-2w2+w3"},
    {"-3w2", "3w0", "-3w2"},
    {"0", "0", "0"},
    {"0", "0", "0"},
    {"0", "0", "0"},
    {"3w2", "3w0", "3w2"},
    {"2w2+w3", "2w0+w2", "w1+2w2"},
    {"w2+2w3", "w0+2w2", "2w1+w2"},
    {"3w3", "3w2", "3w1"},
    {"0", "0", "0"},
    {"0", "0", "0"},
    {"0", "0", "0"},
    {"-3w3", "3w2", "-3w1"},
    {"-w0+2w3", "w0+2w2", "-w0+2w1"},
    {"-2w0+w3", "2w0+w2", "-2w0+w1"},
    {"-3w0", "3w0", "-3w0"},
    {"0", "0", "0"},
    {"0", "0", "0"},
    {"0", "0", "0"},
    {"3w0", "3w0", "3w0"},
    {"2w0+w1", "2w0+w2", "2w0+w3"},
    {"w0+2w1", "w0+2w2", "w0+2w3"},
    {"3w1", "3w2", "3w3"},
    {"0", "0", "0"},
};

}  // namespace golden
