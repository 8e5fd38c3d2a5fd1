#include "commands.hpp"

#include "rws/errors.hpp"

#include <cstdio>

int main(int argc, char** argv) {
  CLI::App app{"Robust, well-conditioned sparse covariance estimation"};
  app.require_subcommand(1);
  auto commands = rws::cli::register_commands(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    for (auto& c : commands) {
      if (c->app->parsed()) c->run();
    }
  } catch (const rws::InvalidInput& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const rws::InsufficientData& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const rws::cli::NumericalFailure& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const rws::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
