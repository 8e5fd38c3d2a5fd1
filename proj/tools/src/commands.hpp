#pragma once

#include "options.hpp"

#include <memory>
#include <vector>

namespace rws::cli {

class Command {
 public:
  virtual ~Command() = default;
  virtual void run() = 0;
  CLI::App* app = nullptr;
};

/// Registers every subcommand on `root`.
std::vector<std::unique_ptr<Command>> register_commands(CLI::App& root);

}  // namespace rws::cli
