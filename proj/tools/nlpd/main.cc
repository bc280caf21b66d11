// Copyright 2026 The NLPD Authors. All Rights Reserved.
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

// nlpd: command-line front end for the NLPD library.

#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "commands.h"
#include "nlpd/error.h"

namespace {

using nlpd::cli::CommonOptions;

void AddCommon(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--params", opt.params_path,
                  "nlpd-params-v1 JSON file (default: $NLPD_PARAMS, then built-in)");
  cmd->add_flag("--auto-clamp", opt.auto_clamp,
                "reduce the stage count to what the image size allows");
}

}  // namespace

int main(int argc, char** argv) {
  namespace cli = nlpd::cli;
  CLI::App app{"Normalized Laplacian pyramid distance (NLPD) tool"};
  app.require_subcommand(1);

  cli::DistOptions dist;
  auto* dist_cmd = app.add_subcommand("dist", "distance between two images");
  dist_cmd->add_option("a", dist.a, "first image")->required();
  dist_cmd->add_option("b", dist.b, "second image")->required();
  AddCommon(dist_cmd, dist.common);

  cli::BatchOptions batch;
  auto* batch_cmd = app.add_subcommand("batch", "distances for a CSV manifest of pairs");
  batch_cmd->add_option("manifest", batch.manifest, "CSV with header path_a,path_b,id")
      ->required();
  batch_cmd->add_option("--jobs", batch.jobs, "worker threads")->capture_default_str();
  batch_cmd->add_option("--format", batch.format, "json or csv")->capture_default_str();
  AddCommon(batch_cmd, batch.common);

  cli::FitOptions fit;
  auto* fit_cmd = app.add_subcommand("fit", "fit normalization filters on a corpus");
  fit_cmd->add_option("corpus_dir", fit.corpus_dir, "directory of PNG/PNM images")
      ->required();
  fit_cmd->add_option("--stages", fit.stages)->capture_default_str();
  fit_cmd->add_option("--neighborhood", fit.neighborhood, "odd filter size")
      ->capture_default_str();
  fit_cmd->add_option("--ridge", fit.ridge, "ridge penalty on filter taps")
      ->capture_default_str();
  fit_cmd->add_option("--sigma", fit.sigma,
                      "store this sigma for every stage instead of the fitted one");
  fit_cmd->add_option("--out", fit.out, "output params file")->required();

  cli::OptimizeOptions opt;
  auto* opt_cmd =
      app.add_subcommand("optimize", "minimize NLPD to a reference by projected descent");
  opt_cmd->add_option("ref", opt.ref, "reference image")->required();
  opt_cmd->add_option("--init", opt.init, "noise, flat or file")->capture_default_str();
  opt_cmd->add_option("--init-path", opt.init_path, "initial image for --init file");
  opt_cmd->add_option("--steps", opt.steps)->capture_default_str()->check(
      CLI::PositiveNumber);
  opt_cmd->add_option("--lr", opt.lr, "initial step size per iteration")
      ->capture_default_str();
  opt_cmd->add_option("--seed", opt.seed, "seed for --init noise")->capture_default_str();
  opt_cmd->add_option("--trace-out", opt.trace_out, "JSON trace of objectives");
  opt_cmd->add_option("--out", opt.out, "final image (16-bit)")->required();
  AddCommon(opt_cmd, opt.common);

  cli::PyramidOptions pyr;
  auto* pyr_cmd = app.add_subcommand("pyramid", "dump pyramid bands as PGM + JSON");
  pyr_cmd->add_option("image", pyr.image, "input image")->required();
  pyr_cmd->add_option("--stages", pyr.stages, "stage count (default: params)");
  pyr_cmd->add_option("--out-dir", pyr.out_dir, "output directory")->required();
  pyr_cmd->add_flag("--normalized", pyr.normalized, "dump NLP subbands instead");
  AddCommon(pyr_cmd, pyr.common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "ERR_USAGE " << e.what() << "\n";
    return cli::kExitUsage;
  }

  try {
    if (*dist_cmd) return cli::RunDist(dist);
    if (*batch_cmd) return cli::RunBatch(batch);
    if (*fit_cmd) return cli::RunFit(fit);
    if (*opt_cmd) return cli::RunOptimize(opt);
    if (*pyr_cmd) return cli::RunPyramid(pyr);
  } catch (const nlpd::Error& e) {
    std::cerr << cli::ReasonFor(e.code()) << " " << e.what() << "\n";
    return cli::ExitCodeFor(e.code());
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "ERR_IO " << e.what() << "\n";
    return cli::kExitIo;
  }
  return cli::kExitUsage;
}
