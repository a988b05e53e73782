// Copyright 2026 The Marble Drop Lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "marbledrop/http_api.h"

#include <httplib.h>

#include <fmt/format.h>

#include <regex>
#include <set>

#include "marbledrop/errors.h"
#include "marbledrop/version.h"

namespace marbledrop {
namespace {

ApiResponse JsonResponse(int status, const Json& j) {
  return ApiResponse{status, "application/json", j.dump()};
}

ApiResponse ErrorResponse(int status, const std::string& message) {
  Json j;
  j["error"] = message;
  return JsonResponse(status, j);
}

Json ParseBody(std::string_view body, std::set<std::string> allowed) {
  Json j;
  if (body.find_first_not_of(" \t\r\n") == std::string_view::npos) {
    j = Json::object();
  } else {
    try {
      j = Json::parse(body);
    } catch (const Json::parse_error& e) {
      throw InvalidArgument(std::string("body is not valid JSON: ") + e.what());
    }
  }
  if (!j.is_object()) throw InvalidArgument("body must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) throw InvalidArgument("unknown field '" + key + "'");
  }
  return j;
}

const Json& Required(const Json& j, const char* key) {
  if (!j.contains(key)) {
    throw InvalidArgument(std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

int IntField(const Json& v, const char* key) {
  if (!v.is_number_integer()) {
    throw InvalidArgument(std::string("'") + key + "' must be an integer");
  }
  return v.get<int>();
}

std::string StringField(const Json& v, const char* key) {
  if (!v.is_string()) {
    throw InvalidArgument(std::string("'") + key + "' must be a string");
  }
  return v.get<std::string>();
}

std::uint64_t SeedField(const Json& v) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
    throw InvalidArgument("'seed' must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

ApiResponse CreateSession(SessionStore& store, std::string_view body) {
  const Json j = ParseBody(body, {"label", "group", "seed", "question_rounds"});
  CreateRequest req;
  if (j.contains("label")) req.label = StringField(j["label"], "label");
  if (j.contains("group")) {
    req.group = ParseGroup(StringField(j["group"], "group"));
    if (!req.group) throw InvalidArgument("group must be \"A\" or \"B\"");
  }
  if (j.contains("seed")) req.seed = SeedField(j["seed"]);
  if (j.contains("question_rounds")) {
    const Json& r = j["question_rounds"];
    if (!r.is_array()) throw InvalidArgument("'question_rounds' must be a list");
    std::vector<int> rounds;
    for (const Json& v : r) rounds.push_back(IntField(v, "question_rounds"));
    req.question_rounds = std::move(rounds);
  }
  const std::string id = store.Create(req);
  Json out;
  out["session"] = id;
  out["state"] = store.State(id);
  return JsonResponse(201, out);
}

ApiResponse SessionCommand(SessionStore& store, const std::string& id,
                           const std::string& command, std::string_view body) {
  if (command == "next") {
    ParseBody(body, {});
    store.Next(id);
  } else if (command == "choice") {
    const Json j = ParseBody(body, {"node", "action"});
    store.Choose(id, IntField(Required(j, "node"), "node"),
                 StringField(Required(j, "action"), "action"));
  } else if (command == "answer") {
    const Json j = ParseBody(body, {"question_id", "option", "text"});
    const std::string qid =
        StringField(Required(j, "question_id"), "question_id");
    if (j.contains("option") == j.contains("text")) {
      throw InvalidArgument("give exactly one of 'option' or 'text'");
    }
    int option;
    if (j.contains("option")) {
      option = IntField(j["option"], "option");
    } else {
      const std::string text = StringField(j["text"], "text");
      const std::vector<std::string>& opts = QuestionOptions();
      const auto it = std::find(opts.begin(), opts.end(), text);
      if (it == opts.end()) throw InvalidArgument("text is not an option");
      option = static_cast<int>(it - opts.begin());
    }
    store.Answer(id, qid, option);
  } else if (command == "final") {
    const Json j = ParseBody(body, {"questionnaire", "answers"});
    const int number =
        IntField(Required(j, "questionnaire"), "questionnaire");
    const Json& list = Required(j, "answers");
    if (!list.is_array()) throw InvalidArgument("'answers' must be a list");
    std::vector<FinalAnswer> answers;
    for (const Json& a : list) {
      if (!a.is_object()) throw InvalidArgument("answers must be objects");
      for (const auto& [key, value] : a.items()) {
        if (key != "position" && key != "direction" && key != "motivation") {
          throw InvalidArgument("unknown field '" + key + "' in answer");
        }
      }
      FinalAnswer f;
      const std::string pos = StringField(Required(a, "position"), "position");
      if (pos.size() != 1) throw InvalidArgument("position is one letter");
      f.position = pos[0];
      const std::string dir =
          StringField(Required(a, "direction"), "direction");
      if (dir == "left") {
        f.direction = Side::kLeft;
      } else if (dir == "right") {
        f.direction = Side::kRight;
      } else {
        throw InvalidArgument("direction must be \"left\" or \"right\"");
      }
      f.motivation = StringField(Required(a, "motivation"), "motivation");
      answers.push_back(std::move(f));
    }
    store.SubmitFinal(id, number, std::move(answers));
  } else if (command == "payment-draw") {
    const Json j = ParseBody(body, {"seed"});
    std::optional<std::uint64_t> seed;
    if (j.contains("seed")) seed = SeedField(j["seed"]);
    const PaymentRecord r = store.DrawPayment(id, seed);
    Json out;
    out["payment"] = r.ToJson();
    out["state"] = store.State(id);
    return JsonResponse(200, out);
  } else {
    return ErrorResponse(404, "unknown route");
  }
  return JsonResponse(200, store.State(id));
}

ApiResponse Dispatch(SessionStore& store, std::string_view method,
                     std::string_view path, std::string_view body) {
  static const std::regex kSessionRoute(R"(^/sessions/([A-Za-z0-9_-]+)/([a-z-]+)$)");
  const std::string p(path);
  if (p == "/health") {
    if (method != "GET") return ErrorResponse(405, "use GET");
    Json j;
    j["status"] = "ok";
    j["version"] = kVersion;
    j["sessions"] = store.size();
    return JsonResponse(200, j);
  }
  if (p == "/sessions") {
    if (method != "POST") return ErrorResponse(405, "use POST");
    return CreateSession(store, body);
  }
  std::smatch m;
  if (!std::regex_match(p, m, kSessionRoute)) {
    return ErrorResponse(404, "unknown route");
  }
  const std::string id = m[1];
  const std::string command = m[2];
  if (command == "state" || command == "log") {
    if (method != "GET") return ErrorResponse(405, "use GET");
    if (command == "state") return JsonResponse(200, store.State(id));
    return ApiResponse{200, "application/x-ndjson", store.Log(id)};
  }
  static const std::set<std::string> kCommands = {
      "next", "choice", "answer", "final", "payment-draw"};
  if (!kCommands.count(command)) return ErrorResponse(404, "unknown route");
  if (method != "POST") return ErrorResponse(405, "use POST");
  return SessionCommand(store, id, command, body);
}

}  // namespace

ApiResponse HandleApiRequest(SessionStore& store, std::string_view method,
                             std::string_view path, std::string_view body) {
  try {
    return Dispatch(store, method, path, body);
  } catch (const NotFound& e) {
    return ErrorResponse(404, e.what());
  } catch (const ProtocolError& e) {
    return ErrorResponse(409, e.what());
  } catch (const InvalidArgument& e) {
    return ErrorResponse(400, e.what());
  } catch (const ParseError& e) {
    return ErrorResponse(400, e.what());
  } catch (const std::exception& e) {
    return ErrorResponse(500, e.what());
  }
}

struct ApiServer::Impl {
  explicit Impl(SessionStore& s) : store(s) {}
  SessionStore& store;
  httplib::Server server;
};

ApiServer::ApiServer(SessionStore& store)
    : impl_(std::make_unique<Impl>(store)) {
  auto handler = [this](const httplib::Request& req, httplib::Response& res) {
    const ApiResponse r =
        HandleApiRequest(impl_->store, req.method, req.path, req.body);
    res.status = r.status;
    res.set_content(r.body, r.content_type);
  };
  impl_->server.Get(".*", handler);
  impl_->server.Post(".*", handler);
  impl_->server.Put(".*", handler);
  impl_->server.Delete(".*", handler);
}

ApiServer::~ApiServer() { Stop(); }

int ApiServer::Bind(const std::string& host, int port) {
  if (port == 0) {
    const int bound = impl_->server.bind_to_any_port(host);
    if (bound < 0) throw Error("cannot bind to " + host);
    return bound;
  }
  if (!impl_->server.bind_to_port(host, port)) {
    throw Error(fmt::format("cannot bind to {}:{} (port in use?)", host, port));
  }
  return port;
}

void ApiServer::Listen() { impl_->server.listen_after_bind(); }

void ApiServer::Stop() {
  if (impl_) impl_->server.stop();
}

bool ApiServer::running() const { return impl_->server.is_running(); }

}  // namespace marbledrop
