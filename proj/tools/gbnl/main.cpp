#include <iostream>

#include "commands.hpp"
#include "gbnl/error.hpp"
#include "io.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Graded Betti numbers of nucleic-acid position clouds and binding-affinity models", "gbnl"};
  app.set_version_flag("--version", GBNL_VERSION);
  app.require_subcommand(1);

  gbnl::cli::add_featurize(app);
  gbnl::cli::add_curves(app);
  gbnl::cli::add_mutate_compare(app);
  gbnl::cli::add_validate_engine(app);
  gbnl::cli::add_ideal_stats(app);
  gbnl::cli::add_train(app);
  gbnl::cli::add_evaluate(app);
  gbnl::cli::add_predict(app);

  gbnl::cli::set_process_arguments(std::vector<std::string>(argv + 1, argv + argc));
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
    return static_cast<int>(gbnl::ErrorCode::kUsage);
  } catch (const gbnl::Error& e) {
    std::cerr << "gbnl: " << gbnl::to_string(e.code()) << ": " << e.what() << '\n';
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    std::cerr << "gbnl: internal: " << e.what() << '\n';
    return static_cast<int>(gbnl::ErrorCode::kInternal);
  }
  return 0;
}
