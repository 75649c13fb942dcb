#ifndef TZ_JSON_IO_HPP
#define TZ_JSON_IO_HPP
//
// Project : tzsolve
// Module  : cli (I/O helpers)
// JSON serialization: matrices as {"n": int, "col": [[re,im],...],
// "row": [[re,im],...]}, vectors as [[re,im],...].
//

#include <string>
#include <vector>

#include "tz/toeplitz.hpp"
#include "tz/types.hpp"

namespace tz {

ToeplitzOperator read_toeplitz_json(const std::string& path);
void write_toeplitz_json(const std::string& path, const ToeplitzOperator& t);

/// Accepts either a bare [[re,im],...] array or {"b": [...]}.
std::vector<cplx> read_vector_json(const std::string& path);
void write_vector_json(const std::string& path, const std::vector<cplx>& v);

}  // namespace tz

#endif
