#pragma once

#include <string>

#ifndef EMAUDIT_TEST_DATA
#define EMAUDIT_TEST_DATA "tests/data"
#endif

inline std::string fixture_path(const std::string& name) {
  return std::string(EMAUDIT_TEST_DATA) + "/" + name;
}
