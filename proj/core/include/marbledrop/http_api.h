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


#ifndef MARBLEDROP_HTTP_API_H_
#define MARBLEDROP_HTTP_API_H_

#include <memory>
#include <string>
#include <string_view>

#include "marbledrop/session_store.h"

namespace marbledrop {

struct ApiResponse {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

// Transport-independent request handling. Routes:
//   GET  /health
//   POST /sessions                     {label?, group?, seed?, question_rounds?}
//   GET  /sessions/{id}/state
//   POST /sessions/{id}/next           {}
//   POST /sessions/{id}/choice         {node, action}
//   POST /sessions/{id}/answer         {question_id, option | text}
//   POST /sessions/{id}/final          {questionnaire, answers}
//   POST /sessions/{id}/payment-draw   {seed?}
//   GET  /sessions/{id}/log
// Unknown fields are rejected. Errors are {"error": message} with 400 for
// invalid input, 404 for unknown sessions or routes, 405 for a wrong method
// and 409 for requests the protocol does not allow now.
ApiResponse HandleApiRequest(SessionStore& store, std::string_view method,
                             std::string_view path, std::string_view body);

// HTTP server over a SessionStore.
class ApiServer {
 public:
  explicit ApiServer(SessionStore& store);
  ~ApiServer();
  ApiServer(const ApiServer&) = delete;
  ApiServer& operator=(const ApiServer&) = delete;

  // Returns the bound port; throws Error when binding fails.
  int Bind(const std::string& host, int port);  // port 0: any free port
  // Blocks until Stop() is called.
  void Listen();
  void Stop();
  bool running() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace marbledrop

#endif  // MARBLEDROP_HTTP_API_H_
