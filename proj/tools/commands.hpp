#pragma once

#include <functional>

#include <CLI11.hpp>

namespace qldpc::cli {

/// Deferred work for the chosen subcommand; returns the exit status.
using Action = std::function<int()>;

void add_code_commands(CLI::App& app, Action& action);
void add_subtrees_command(CLI::App& app, Action& action);
void add_decode_commands(CLI::App& app, Action& action);
void add_simulate_command(CLI::App& app, Action& action);
void add_compare_command(CLI::App& app, Action& action);

}  // namespace qldpc::cli
