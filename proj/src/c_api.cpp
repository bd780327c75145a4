#include "morsegraded/morsegraded.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "morsegraded/cli_io.hpp"
#include "morsegraded/error.hpp"

struct mg_session {
  mg::InputDocument doc;
};

namespace {

thread_local std::string last_error;

mg_status fail(mg_status status, const std::string& message) {
  last_error = message;
  return status;
}

template <class F>
mg_status guarded(F&& f) {
  try {
    last_error.clear();
    return f();
  } catch (const mg::Error& e) {
    return fail(static_cast<mg_status>(static_cast<int>(e.code())), e.what());
  } catch (const std::bad_alloc&) {
    return fail(MG_INTERNAL_ERROR, "out of memory");
  } catch (const std::exception& e) {
    return fail(MG_INTERNAL_ERROR, e.what());
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* mg_version(void) { return mg::version_string(); }

mg_status mg_session_open(const char* input_json, mg_session** out) {
  if (!out) return fail(MG_NULL_ARGUMENT, "output pointer is null");
  *out = nullptr;
  if (!input_json) return fail(MG_NULL_ARGUMENT, "input is null");
  return guarded([&] {
    *out = new mg_session{mg::parse_input(input_json)};
    return MG_OK;
  });
}

void mg_session_close(mg_session* session) { delete session; }

mg_status mg_run(mg_session* session, const char* config_json, char** out) {
  if (!out) return fail(MG_NULL_ARGUMENT, "output pointer is null");
  *out = nullptr;
  if (!session) return fail(MG_NULL_ARGUMENT, "session is null");
  return guarded([&] {
    mg::RunConfig cfg = mg::parse_run_config(config_json ? config_json : "");
    *out = copy_string(mg::run_command(session->doc, cfg));
    return MG_OK;
  });
}

void mg_free_string(char* s) { std::free(s); }

const char* mg_last_error(void) { return last_error.c_str(); }

const char* mg_status_name(mg_status status) {
  switch (status) {
    case MG_OK:
      return "Ok";
    case MG_NULL_ARGUMENT:
      return "NullArgument";
    case MG_INTERNAL_ERROR:
      return "InternalError";
    default:
      if (status >= MG_PARSE_ERROR && status <= MG_UNKNOWN_COMMAND)
        return mg::error_code_name(static_cast<mg::ErrorCode>(static_cast<int>(status)));
      return "Unknown";
  }
}

int mg_exit_code(mg_status status) {
  if (status == MG_OK) return 0;
  if (status >= MG_PARSE_ERROR && status <= MG_UNKNOWN_COMMAND &&
      mg::is_validation_error(static_cast<mg::ErrorCode>(static_cast<int>(status))))
    return 1;
  if (status == MG_NULL_ARGUMENT) return 1;
  return 2;
}

mg_status mg_semigroup_leq(const mg_session* session, const int* mu, const int* lambda, size_t length, int* out) {
  if (!session || !mu || !lambda || !out) return fail(MG_NULL_ARGUMENT, "null argument");
  return guarded([&] {
    const auto& s = session->doc.semigroup;
    if (length != s.dimension()) return fail(MG_INVALID_INPUT, "vector length does not match the dimension");
    mg::Multidegree a(std::vector<int>(mu, mu + length)), b(std::vector<int>(lambda, lambda + length));
    if (!s.contains(a) || !s.contains(b)) return fail(MG_INVALID_INPUT, "vector is not in the semigroup");
    *out = s.leq(a, b) ? 1 : 0;
    return MG_OK;
  });
}

}
