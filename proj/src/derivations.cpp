#include "pauliforge/builtins.hpp"
#include "pauliforge/mapping_passes.hpp"

#include <sstream>
#include <stdexcept>
#include <string>

namespace pauliforge {

namespace {

RuleParams with_b(Axis b) {
  RuleParams p;
  p.b = b;
  return p;
}

RuleParams extra_first(Direction d = Direction::Forward) {
  RuleParams p;
  p.extra_before = true;
  p.direction = d;
  return p;
}

RuleParams backward() {
  RuleParams p;
  p.direction = Direction::Backward;
  return p;
}

}  // namespace

DerivationScript derive_amy_toffoli() {
  using R = RuleId;
  ScriptBuilder b("amy-toffoli", builtin("barenco-toffoli"));

  // V roots become Z roots between Hadamards
  b.rewrite(R::ConjugateByTranslation, 4, with_b(Axis::Z), "V as H S H");
  b.rewrite(R::ConjugateByTranslation, 2, with_b(Axis::Z));
  b.rewrite(R::ConjugateByTranslation, 0, with_b(Axis::Z));
  b.move(2, 3);
  b.rewrite(R::CancelInvolution, 3, {}, "H H");
  b.move(4, 5);
  b.rewrite(R::CancelInvolution, 5, {}, "H H");
  b.rewrite(R::FlipZRootControlTarget, 3);

  b.rewrite(R::Thm1RemoveControl, 5, {}, "controlled S roots to T stages");
  b.rewrite(R::Thm1RemoveControl, 3);
  b.rewrite(R::Thm1RemoveControl, 1);
  b.move(15, 1);
  b.move(4, 2);
  b.move(10, 13);
  b.rewrite(R::CancelAdjacentInverses, 13);

  b.move(13, 12);
  b.rewrite(R::CnotRuleD7, 11);
  b.rewrite(R::CancelInvolution, 13);
  b.move(11, 10);
  b.rewrite(R::CnotRuleD7, 9, extra_first());

  // line both T-dagger gates up in one stage
  b.rewrite(R::SwapTConjugation, 7);
  b.rewrite(R::CommuteGates, 6);
  b.rewrite(R::CommuteGates, 5);
  b.rewrite(R::CommuteGates, 4);
  b.rewrite(R::SwapTConjugation, 5);
  b.rewrite(R::CommuteGates, 7);
  b.rewrite(R::CommuteGates, 6);
  b.move(14, 13);

  // reshape the last block until a swap brackets its phase gates
  b.rewrite(R::CnotRuleD7, 9, extra_first());
  b.rewrite(R::Lemma1CaseCorollary, 12, backward());
  b.rewrite(R::CommuteGates, 11);
  b.rewrite(R::CommuteGates, 12);
  b.rewrite(R::CnotRuleD7, 13, extra_first());
  b.rewrite(R::Lemma1CaseCorollary, 11);
  b.rewrite(R::CommuteGates, 9);
  b.rewrite(R::CnotRuleD7, 8, extra_first());
  b.rewrite(R::CommuteGates, 8);
  b.insert_pair(17, cx(2, 1));
  b.relabel(10, 18, "drop the swaps");
  b.move(6, 9);
  b.move(6, 7);

  return b.build(builtin("amy-toffoli"));
}

namespace {

// Commutation moves and rewrites taking the expanded adder core (between the two H gates
// on line 3) down to T-depth 2. "a>b" moves a gate, a letter plus anchor is a rewrite:
// T swap-T, D/d D7 forward/backward, e D7 backward with the extra CNOT first,
// I involution, A adjacent inverses, M merge.
constexpr const char* kAdderMoves =
    "3>1 8>2 21>3 16>14 T9 9>8 10>9 12>10 13>11 13>12 14>13 15>14 A14 14>13 D7 9>3 8>7 10>8 11>9 "
    "12>10 16>15 17>16 T14 I13 4>3 5>4 e5 5>3 7>4 8>5 9>6 12>7 D19 21>19 D20 16>15 17>16 18>17 22>21 "
    "d18 D19 21>18 T16 16>14 17>16 D18 20>19 e19 D20 22>21 23>22 d21 D19 21>20 d18 18>16 21>18 T10 "
    "10>6 11>8 12>9 13>11 15>12 15>14 16>15 17>16 18>17 M18 18>1 19>17 20>18 I17 D6 6>3 10>4 11>9 "
    "11>10 T11 14>12 15>13 D19 19>16 e16 20>19 T17 d15 10>9 15>13 D10 13>12 D13 15>9 d8 8>5 12>11 "
    "13>12 14>13 15>14 16>15 D16 18>14 I13 17>16 D17 19>10 D9 9>6 I5 D9 11>7 T11 11>10 15>12 16>13 "
    "T11 14>12 17>13 18>17 19>18 D16 18>16 19>18 T19 19>17 20>18 21>19 T17 17>16 18>17 19>18 T16 "
    "14>12 15>13 20>17 T11 8>7 9>8 14>12 16>15 d9 D8 10>4 9>8 11>9 D3 3>1 6>5 7>6 e7 7>2 12>3 13>12 "
    "D13 15>13 16>15 D14 12>11 16>12 15>14 T10 10>4 13>11 e15 12>5 13>6 15>14 T4 4>3 5>4 6>5 8>7 11>8 "
    "10>9 12>10 12>11 13>12 14>13 15>14 T3 2>1 3>2 15>3 8>4 10>6 12>7 11>8 12>9 13>10 14>11 15>14 "
    "16>15 D5 7>3 I2 11>10 12>11 13>12 D13 15>12 D11 13>11 D12 14>12 15>14 e15 15>10 14>13 D14 16>11 "
    "I10 D4 4>1 6>3 11>4 13>5 T3 7>4 10>5 9>8 13>9 12>10 12>11 13>12 14>13 15>14 17>15 D8 6>4 7>5 "
    "11>8 T3 17>4 7>5 8>6 9>7 14>8 11>10 12>11 15>14 16>15 18>16 I12 3>2 4>3 5>4 6>5 D6 8>3 I2 13>12 "
    "D11 2>1 3>2 4>3 5>4 6>5 7>6 T7 7>6 13>11 e9 9>7 D10 10>7 17>10 13>12 19>18 e19 8>6 8>7 19>16 "
    "21>18 d5 13>12 D11 11>9 14>13 16>14 e12 12>11 14>13 D4 4>2 11>3 7>6 D11 13>9 12>10 d8 e6 6>4 "
    "12>10 13>11 T9 9>5 12>10 14>13 D4 4>3 6>5 D2 2>1 4>3 7>6 T4 2>1 e2 2>1 4>2 7>6 8>7 D8 6>5 7>6 "
    "10>7 11>10 e8 5>4 6>5 7>6 8>7 D8 10>8 I10 D12 12>9 17>11 d8 8>7 D14 16>12 17>16 18>17 d16 16>15 "
    "D16 18>17 D15 18>17 I14 8>7 14>11 15>13 D8 10>8 D7 10>9 11>10 12>11 13>12 14>13 15>14 16>15 T16 "
    "19>15 20>18 21>19 22>20 e15 15>13 T10 10>8 14>11 15>12 17>13 e6 6>4 13>5 14>13 15>14 16>15 T10 "
    "10>9 11>10 12>11 14>13 T9 14>9 T10 13>9 D14 16>15 D13 13>12 19>17 20>18 T16 16>13 17>14 18>15 "
    "T13 13>12 16>14 18>15 19>16 21>17 22>18 22>19 T16 16>14 17>15 18>16 20>19 21>20 22>21 T14 10>9 "
    "17>15 22>16 20>17 21>18 22>19 D8 8>6 10>9 12>11 14>13 D12 14>7 19>16 20>17 T15 19>16 21>17 I14 "
    "D6 8>4 7>6 e4 4>3 T1 20>19 21>20 T18 8>5 22>16 T6 5>4 6>5 7>6 8>7 9>8 10>9 11>10 12>11 13>12 "
    "14>13 15>14 17>15 18>16 19>17 20>18 21>19 22>20 22>21 T17 8>7 20>18 d8 10>9 11>10 d9 13>10 14>11 "
    "T12 7>5 8>7 9>8 15>13 d6 4>2 5>3 9>4 7>6 10>9 11>10 12>11 15>14 16>15 19>18 ";
void replay(ScriptBuilder& b, const char* program) {
  std::istringstream in(program);
  std::string tok;
  while (in >> tok) {
    if (auto gt = tok.find('>'); gt != std::string::npos) {
      b.move(std::stoul(tok.substr(0, gt)), std::stoul(tok.substr(gt + 1)));
      continue;
    }
    const std::size_t anchor = std::stoul(tok.substr(1));
    switch (tok[0]) {
      case 'T': b.rewrite(RuleId::SwapTConjugation, anchor); break;
      case 'D': b.rewrite(RuleId::CnotRuleD7, anchor); break;
      case 'd': b.rewrite(RuleId::CnotRuleD7, anchor, backward()); break;
      case 'e': b.rewrite(RuleId::CnotRuleD7, anchor, extra_first(Direction::Backward)); break;
      case 'I': b.rewrite(RuleId::CancelInvolution, anchor); break;
      case 'A': b.rewrite(RuleId::CancelAdjacentInverses, anchor); break;
      case 'M': b.rewrite(RuleId::MergeSameControls, anchor); break;
      default: throw std::logic_error("bad replay token " + tok);
    }
  }
}

void full_adder_steps(ScriptBuilder& b) {
  using R = RuleId;
  RuleParams last_first;
  last_first.last_root_first = true;
  RuleParams swapped;
  swapped.swap_control_lines = true;
  // expansion layouts chosen so the middle CNOT pair and the V / V^dagger pair meet
  b.rewrite(R::Thm2BarencoExtended, 0, last_first, "expand first Peres Toffoli");
  b.rewrite(R::Thm2BarencoExtended, 6, swapped, "expand second Peres Toffoli");
  b.rewrite(R::CancelInvolution, 4, {}, "CNOT pair");
  b.rewrite(R::CancelAdjacentInverses, 3, {}, "two controlled V gates cancel");
  for (std::size_t i : {6, 4, 1, 0}) b.rewrite(R::ConjugateByTranslation, i, with_b(Axis::Z), "V as H S H");
  b.rewrite(R::CancelInvolution, 2);
  b.move(3, 5);
  b.rewrite(R::CancelInvolution, 5);
  b.move(6, 7);
  b.rewrite(R::CancelInvolution, 7);
  for (std::size_t i : {7, 5, 2, 1}) b.rewrite(R::Thm1RemoveControl, i, {}, "controlled S to T gates");
  b.move(24, 25, "second H to the end");
  replay(b, kAdderMoves);
}

}  // namespace

DerivationScript derive_full_adder() {
  ScriptBuilder b("full-adder", builtin("peres-pair-adder"));
  full_adder_steps(b);
  return b.build(builtin("full-adder-final"));
}

DerivationScript derive_w_adder() {
  ScriptBuilder b("w-adder", builtin("peres-pair-adder"));
  full_adder_steps(b);
  append_translation(b, Axis::X);
  return b.build();
}

}  // namespace pauliforge
