#pragma once

#include <httplib.h>

#include "locus/cli/session.hpp"

namespace locus::cli {

// Session endpoints:
//   POST /sessions              {net, alphabet?, fuel?}  -> 201 state (with id)
//   GET  /sessions/{id}                                   -> 200 state | 404
//   POST /sessions/{id}/choice  {i, J}                   -> 200 state | 404 | 409 {error, offered}
// Batch endpoints POST /{command} take the same request object as `run` and answer with the
// document the CLI prints for --format json; code 2 maps to 400.
void install_routes(httplib::Server& srv, SessionStore& store);

}  // namespace locus::cli
