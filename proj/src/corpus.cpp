#include "fpeq/corpus.hpp"

#include "fpeq/error.hpp"

namespace fpeq {

namespace {

// Alignment-stage equivalence: with identical operands, the operand-select
// and alignment registers of both models must agree.
const char* kLemma1 = R"(property mantissa_align_equivalence;
  (impl.s1 == spec.s1) && (impl.s2 == spec.s2) &&
  // Signs of the input operands are the same
  (impl.e1 == spec.e1) && (impl.e2 == spec.e2) &&
  // Exponents of the input operands are equal
  (impl.m1 == spec.m1) && (impl.m2 == spec.m2)
  // Mantissas of the input operands are equal
  |->
  (impl.algman == spec.algman) &&
  // Aligned mantissas must be equal
  (impl.bigman == spec.bigman);
  // Larger mantissas must be equal
endproperty

assert property(mantissa_align_equivalence);
)";

// Add-round-stage equivalence: once the models agree on the aligned operand
// registers — and order their operands consistently — the rounded results
// must agree. The assume ties the input exponents between the models.
const char* kLemma2 = R"(property add_round_equivalence;
  (impl.s1 == spec.s1) && (impl.s2 == spec.s2) &&
  // Signs of the input operands are the same
  (impl.big_is_f1 == spec.big_is_f1) &&
  // Operand selection is consistent between the models
  (impl.algman == spec.algman) &&
  // Aligned mantissas are equal
  (impl.bigman == spec.bigman)
  // Larger mantissas are equal
  |->
  (impl.s == spec.s) &&
  // Signs of the results must be equal
  (impl.e == spec.e) &&
  // Exponents of the results must be equal
  (impl.m == spec.m);
  // Mantissas of the results must be equal
endproperty

property exp_inputs_are_equal;
  1 |-> (impl.e1 == spec.e1) && (impl.e2 == spec.e2);
  // Exponents of the input operands are equal
endproperty

assert property(add_round_equivalence);
assume property(exp_inputs_are_equal);
)";

// Top-level result equivalence, one assertion per result field.
const char* kTheoremSplit3 = R"(property equal_inputs_outputs_sign_match;
  ((impl.s1 == spec.s1) && (impl.s2 == spec.s2) &&
   (impl.e1 == spec.e1) && (impl.e2 == spec.e2) &&
   (impl.m1 == spec.m1) && (impl.m2 == spec.m2))
  |-> (impl.s == spec.s);
endproperty

property equal_inputs_outputs_exp_match;
  ((impl.s1 == spec.s1) && (impl.s2 == spec.s2) &&
   (impl.e1 == spec.e1) && (impl.e2 == spec.e2) &&
   (impl.m1 == spec.m1) && (impl.m2 == spec.m2))
  |-> (impl.e == spec.e);
endproperty

property equal_inputs_outputs_mant_match;
  ((impl.s1 == spec.s1) && (impl.s2 == spec.s2) &&
   (impl.e1 == spec.e1) && (impl.e2 == spec.e2) &&
   (impl.m1 == spec.m1) && (impl.m2 == spec.m2))
  |-> (impl.m == spec.m);
endproperty

assert property(equal_inputs_outputs_sign_match);
assert property(equal_inputs_outputs_exp_match);
assert property(equal_inputs_outputs_mant_match);
)";

}  // namespace

std::vector<std::string> corpus_names()
{
  return {"handwritten-lemma1", "handwritten-lemma2", "theorem-split3"};
}

std::string corpus_text(std::string_view name)
{
  if (name == "handwritten-lemma1")
  {
    return kLemma1;
  }
  if (name == "handwritten-lemma2")
  {
    return kLemma2;
  }
  if (name == "theorem-split3")
  {
    return kTheoremSplit3;
  }
  throw ConfigError("unknown corpus '" + std::string(name)
                    + "' (available: handwritten-lemma1, handwritten-lemma2, "
                      "theorem-split3)");
}

}  // namespace fpeq
