#pragma once

#include <charconv>
#include <stdexcept>
#include <string>
#include <system_error>

namespace schelling {

// Shortest decimal string that parses back to exactly x (to_chars shortest
// form).  Used everywhere a double is written to text, so round trips are
// bit-exact and output is byte-stable.
inline std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  if (res.ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, res.ptr);
}

inline double parse_double(const std::string& text) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto res = std::from_chars(begin, end, value);
  if (res.ec != std::errc() || res.ptr != end)
    throw std::invalid_argument("bad floating-point value '" + text + "'");
  return value;
}

}  // namespace schelling
