#include <iostream>

#include <CLI11.hpp>

#include "sks/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Kripkean truth with a Nelson conditional: evaluation, proof search and fixed points"};
  app.require_subcommand(1);

  sks::CommandOptions o;
  std::string format = "text";

  auto common = [&](CLI::App* sub, bool model_required) {
    if (model_required) sub->add_option("model", o.model, "model file")->required();
    sub->add_option("--format", format, "text or record")->check(CLI::IsMember({"text", "record"}));
    sub->add_option("--depth", o.depth, "universe depth (overrides the model)");
    sub->add_option("--budget", o.budget, "proof-search step budget");
    sub->add_flag("--serial", o.serial, "use the serial reference kernels");
  };
  auto with_cond = [&](CLI::App* sub) {
    sub->add_option("--cond", o.cond, "admissibility condition")
        ->check(CLI::IsMember({"c", "k3", "n3", "nve", "n3nve"}));
    sub->add_flag("--modal", o.modal, "iterate over (world, interpretation) points");
  };
  auto with_result = [&](CLI::App* sub) {
    sub->add_option("--result", o.result, "saved fixpoint record (--format record)");
  };

  auto* validate = app.add_subcommand("validate", "check a model file");
  common(validate, true);

  auto* eval = app.add_subcommand("eval", "truth value of a sentence at each interpretation");
  common(eval, true);
  eval->add_option("formula", o.args, "sentence")->required()->expected(1);
  eval->add_option("--cond", o.cond, "evaluate at the fixed point under this condition");
  eval->add_option("--interp", o.interp, "only this interpretation");
  eval->add_option("--world", o.world, "only this world");

  auto* meval = app.add_subcommand("modal-eval", "truth value at worlds of a modal structure");
  common(meval, true);
  meval->add_option("formula", o.args, "sentence")->required()->expected(1);
  meval->add_option("--interp", o.interp, "only this interpretation");
  meval->add_option("--world", o.world, "only this world");

  auto* prove = app.add_subcommand("prove", "backward proof search for a sequent");
  prove->add_option("sequent", o.args, "sequent 'A, B => C'")->expected(0, 1);
  prove->add_option("--model", o.model, "model file supplying the signature");
  prove->add_option("--logic", o.logic, "k3, n3, k3t or n3t")->check(CLI::IsMember({"k3", "n3", "k3t", "n3t"}));
  prove->add_flag("--identity", o.identity, "enable the identity rules");
  prove->add_flag("--tree", o.tree, "print the proof tree");
  prove->add_option("--curry", o.curry, "check the Curry derivation for this named sentence");
  prove->add_option("--format", format, "text or record")->check(CLI::IsMember({"text", "record"}));
  prove->add_option("--budget", o.budget, "proof-search step budget");

  auto* fix = app.add_subcommand("fixpoint", "iterate theta/Theta to a fixed point");
  common(fix, true);
  with_cond(fix);
  fix->add_flag("--trace", o.trace, "include every stage valuation");

  auto* naive = app.add_subcommand("naivety", "check phi <-> T'phi' at the fixed point");
  common(naive, true);
  with_cond(naive);
  with_result(naive);

  auto* princ = app.add_subcommand("principles", "truth principles (a)-(k) at the fixed point");
  common(princ, true);
  with_cond(princ);
  with_result(princ);

  auto* ded = app.add_subcommand("dedthm", "global deduction theorem for one triple");
  common(ded, true);
  with_cond(ded);
  with_result(ded);
  ded->add_option("phi_psi", o.args, "phi and psi")->required()->expected(2);
  ded->add_option("--gamma", o.gamma, "premise (repeatable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : sks::kInputError;
  }
  o.command = app.get_subcommands().front()->get_name();
  o.format = format == "record" ? sks::Format::Record : sks::Format::Text;
  return sks::run_command(o, std::cout, std::cerr);
}
