#pragma once

#include <stdexcept>
#include <string>

namespace bowlership {

// Stable error codes surfaced by library operations. The CLI maps
// io_error to exit 2 and everything else to exit 1.
enum class errc {
  malformed_file,
  schema_violation,
  unknown_format,
  empty_corpus,
  unknown_bowler,
  no_overs,
  empty_sample,
  degenerate_sample,
  too_small,
  insufficient_sample,
  empty_set,
  unknown_vertex,
  k_too_large,
  k_nonpositive,
  too_many_vertices,
  bad_config,
  io_error,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::malformed_file: return "MALFORMED_FILE";
    case errc::schema_violation: return "SCHEMA_VIOLATION";
    case errc::unknown_format: return "UNKNOWN_FORMAT";
    case errc::empty_corpus: return "EMPTY_CORPUS";
    case errc::unknown_bowler: return "UNKNOWN_BOWLER";
    case errc::no_overs: return "NO_OVERS";
    case errc::empty_sample: return "EMPTY_SAMPLE";
    case errc::degenerate_sample: return "DEGENERATE_SAMPLE";
    case errc::too_small: return "TOO_SMALL";
    case errc::insufficient_sample: return "INSUFFICIENT_SAMPLE";
    case errc::empty_set: return "EMPTY_SET";
    case errc::unknown_vertex: return "UNKNOWN_VERTEX";
    case errc::k_too_large: return "K_TOO_LARGE";
    case errc::k_nonpositive: return "K_NONPOSITIVE";
    case errc::too_many_vertices: return "TOO_MANY_VERTICES";
    case errc::bad_config: return "BAD_CONFIG";
    case errc::io_error: return "IO_ERROR";
  }
  return "UNKNOWN";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& msg) { throw error(code, msg); }

}  // namespace bowlership
