#include <iostream>

#include "commands.hpp"
#include "qldpc/error.hpp"
#include "support.hpp"

int main(int argc, char** argv) {
  using namespace qldpc::cli;
  CLI::App app{"Quantum LDPC code construction and BP / MBBP-LD decoding", "qldpc"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);
  Action action;
  add_code_commands(app, action);
  add_subtrees_command(app, action);
  add_decode_commands(app, action);
  add_simulate_command(app, action);
  add_compare_command(app, action);

  if (argc <= 1) {
    std::cerr << app.help();
    return kUsage;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    return action ? action() : kUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const qldpc::Error& e) {
    std::cerr << "error (" << qldpc::to_string(e.code()) << "): " << e.what() << "\n";
    return e.code() == qldpc::Errc::invariant_violation ? kInvariant : kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInvariant;
  }
}
