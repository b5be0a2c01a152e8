#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "hoco/trace.hpp"

namespace hoco {

// Shortest decimal string that parses back to exactly the same binary64
// value ("17" not "17.000000"); infinities and NaN spell as inf/-inf/nan.
std::string format_shortest(double v);
double parse_exact(std::string_view s);

// Text trace format: a small key=value header (config, domain, noise,
// schedule) followed by one line per round,
//   t, x_t, g_t, true_grad, noise, eta_t
// with vector components space-separated inside each comma field. Rounds
// 1..T are stored; the post-update point x_{T+1} is reconstructed on load by
// replaying the final step through the same update code, so it matches the
// live run bit for bit. Optimistic (oada) traces are reconstructed under the
// default hint rule h_t = g_{t-1}.
void write_trace(const RunTrace& tr, std::ostream& os);
RunTrace read_trace(std::istream& is);

void write_trace_file(const RunTrace& tr, const std::string& path);
RunTrace read_trace_file(const std::string& path);

}  // namespace hoco
