#include "hypdist/hypdist.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "errors.hpp"
#include "service.hpp"

struct hd_session {
  hypdist::Session session;
};

namespace {

thread_local std::string g_error_name;
thread_local std::string g_error_message;

void clear_error() {
  g_error_name.clear();
  g_error_message.clear();
}

int set_error(int code, std::string name, std::string message) {
  g_error_name = std::move(name);
  g_error_message = std::move(message);
  return code;
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <class F>
int guarded(F&& body) {
  clear_error();
  try {
    body();
    return HD_OK;
  } catch (const hypdist::UsageError& e) {
    return set_error(HD_ERR_USAGE, "UsageError", e.what());
  } catch (const hypdist::DomainError& e) {
    return set_error(HD_ERR_DOMAIN, e.name(), e.what());
  } catch (const nlohmann::json::exception& e) {
    return set_error(HD_ERR_USAGE, "UsageError", e.what());
  } catch (const hypdist::InvariantBreach& e) {
    return set_error(HD_ERR_INTERNAL, "InternalError", e.what());
  } catch (const std::exception& e) {
    return set_error(HD_ERR_INTERNAL, "InternalError", e.what());
  } catch (...) {
    return set_error(HD_ERR_INTERNAL, "InternalError", "unknown exception");
  }
}

}  // namespace

extern "C" {

const char* hd_version(void) { return HYPDIST_VERSION; }

const char* hd_last_error_name(void) { return g_error_name.c_str(); }
const char* hd_last_error_message(void) { return g_error_message.c_str(); }

int hd_session_open(const char* config_json, hd_session** out) {
  if (!config_json || !out) return set_error(HD_ERR_USAGE, "UsageError", "null argument");
  *out = nullptr;
  return guarded([&] {
    auto config = hypdist::parse_json_text(config_json, "configuration");
    auto* s = new hd_session{hypdist::open_session(config)};
    *out = s;
  });
}

void hd_session_free(hd_session* session) { delete session; }

int hd_operation_info(const char* op, int* needs_session) {
  if (!op || !hypdist::is_operation(op)) return 0;
  if (needs_session) *needs_session = hypdist::operation_needs_session(op) ? 1 : 0;
  return 1;
}

int hd_call(const hd_session* session, const char* op, const char* args_json, char** result_json) {
  if (!op || !result_json) return set_error(HD_ERR_USAGE, "UsageError", "null argument");
  *result_json = nullptr;
  return guarded([&] {
    auto args = hypdist::parse_json_text(args_json ? args_json : "{}", "arguments");
    auto result = hypdist::call_operation(session ? &session->session : nullptr, op, args);
    *result_json = dup(result.dump());
  });
}

void hd_sha256_hex(const void* data, size_t len, char out[65]) {
  std::string hex = hypdist::sha256_hex(std::string(static_cast<const char*>(data), len));
  std::memcpy(out, hex.c_str(), 65);
}

void hd_string_free(char* s) { std::free(s); }

}  // extern "C"
