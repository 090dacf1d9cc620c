#include "triphase/records_io.hpp"

#include <cstdio>
#include <sstream>

namespace triphase {

std::string format_sig12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

std::string records_to_csv(const std::vector<FringeRecord>& records) {
  std::ostringstream out;
  out << "delta_rad,p_plus,p_minus\n";
  for (const FringeRecord& r : records) {
    out << format_sig12(r.delta) << ',' << format_sig12(r.p_plus) << ','
        << format_sig12(r.p_minus) << '\n';
  }
  return out.str();
}

std::string records_to_csv(const std::vector<CountRecord>& records) {
  std::ostringstream out;
  out << "delta_rad,n_plus,n_minus\n";
  for (const CountRecord& r : records) {
    out << format_sig12(r.delta) << ',' << r.n_plus << ',' << r.n_minus
        << '\n';
  }
  return out.str();
}

std::string records_to_json(const std::vector<FringeRecord>& records) {
  std::ostringstream out;
  out << "[\n";
  for (size_t i = 0; i < records.size(); ++i) {
    const FringeRecord& r = records[i];
    out << "  {\"delta_rad\": " << format_sig12(r.delta)
        << ", \"p_plus\": " << format_sig12(r.p_plus)
        << ", \"p_minus\": " << format_sig12(r.p_minus) << '}'
        << (i + 1 < records.size() ? ",\n" : "\n");
  }
  out << "]\n";
  return out.str();
}

std::string records_to_json(const std::vector<CountRecord>& records) {
  std::ostringstream out;
  out << "[\n";
  for (size_t i = 0; i < records.size(); ++i) {
    const CountRecord& r = records[i];
    out << "  {\"delta_rad\": " << format_sig12(r.delta)
        << ", \"n_plus\": " << r.n_plus << ", \"n_minus\": " << r.n_minus
        << '}' << (i + 1 < records.size() ? ",\n" : "\n");
  }
  out << "]\n";
  return out.str();
}

}  // namespace triphase
