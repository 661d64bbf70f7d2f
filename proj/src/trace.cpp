#include "eesampler/trace.hpp"

#include <fstream>
#include <stdexcept>

#include "eesampler/csv.hpp"

namespace eesampler {

void Trace::write_csv(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  csv::write_coord_header(out, dimension_, true);
  for (std::size_t i = 0; i < size(); ++i) csv::write_row(out, i, point(i), energy(i));
}

}  // namespace eesampler
