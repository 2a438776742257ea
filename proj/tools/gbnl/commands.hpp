#pragma once

#include "CLI11.hpp"

namespace gbnl::cli {

void add_featurize(CLI::App& app);
void add_curves(CLI::App& app);
void add_mutate_compare(CLI::App& app);
void add_validate_engine(CLI::App& app);
void add_ideal_stats(CLI::App& app);
void add_train(CLI::App& app);
void add_evaluate(CLI::App& app);
void add_predict(CLI::App& app);

}  // namespace gbnl::cli
