#include "tz/json_io.hpp"

#include <fstream>

#include <json.hpp>

#include "tz/error.hpp"

namespace tz {
namespace {

using nlohmann::json;

json load_json(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), errc::io, "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    fail(errc::io, "cannot parse " + path + ": " + e.what());
  }
  return j;
}

void save_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  require(out.good(), errc::io, "cannot open " + path + " for writing");
  out << j.dump(2) << "\n";
  require(out.good(), errc::io, "write failed for " + path);
}

std::vector<cplx> parse_complex_array(const json& j, const std::string& what) {
  require(j.is_array(), errc::io, what + " must be an array of [re, im] pairs");
  std::vector<cplx> v;
  v.reserve(j.size());
  for (const json& e : j) {
    require(e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number(), errc::io,
            what + " entries must be [re, im] pairs");
    v.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  return v;
}

json dump_complex_array(const std::vector<cplx>& v) {
  json j = json::array();
  for (const cplx& z : v) j.push_back({z.real(), z.imag()});
  return j;
}

}  // namespace

ToeplitzOperator read_toeplitz_json(const std::string& path) {
  json j = load_json(path);
  require(j.is_object() && j.contains("n") && j.contains("col") && j.contains("row"), errc::io,
          path + ": expected {\"n\", \"col\", \"row\"}");
  std::vector<cplx> col = parse_complex_array(j["col"], "col");
  std::vector<cplx> row = parse_complex_array(j["row"], "row");
  require(j["n"].is_number_unsigned() && j["n"].get<std::size_t>() == col.size(), errc::io,
          path + ": n does not match col length");
  return make_toeplitz(std::move(col), std::move(row));
}

void write_toeplitz_json(const std::string& path, const ToeplitzOperator& t) {
  json j;
  j["n"] = t.n();
  j["col"] = dump_complex_array(t.col());
  j["row"] = dump_complex_array(t.row());
  save_json(path, j);
}

std::vector<cplx> read_vector_json(const std::string& path) {
  json j = load_json(path);
  if (j.is_object() && j.contains("b")) return parse_complex_array(j["b"], "b");
  return parse_complex_array(j, path);
}

void write_vector_json(const std::string& path, const std::vector<cplx>& v) {
  save_json(path, dump_complex_array(v));
}

}  // namespace tz
