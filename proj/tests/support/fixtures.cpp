#include "fixtures.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "hflmc/kinds.hpp"
#include "hflmc/parser.hpp"

namespace fixtures {

hflmc::Hes load_hes(const std::string& text) { return hflmc::infer_kinds(hflmc::parse_hes(text)); }

hflmc::Lts load_lts(const std::string& text) { return hflmc::parse_lts(text); }

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace fixtures
