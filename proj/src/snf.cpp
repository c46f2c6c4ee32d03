#include "fo2kc/snf.hpp"

#include "fo2kc/errors.hpp"

namespace fo2kc {

Vocabulary SnfSentence::original_vocab() const {
  Vocabulary v;
  for (int p = 0; p < original_pred_count; ++p)
    v.add(vocab[p].name, vocab[p].arity);
  return v;
}

SnfSentence to_snf(const Sentence &sentence) {
  SnfSentence out;
  out.vocab = sentence.vocab;
  out.original_pred_count = sentence.vocab.size();

  std::vector<Formula> universal;
  std::vector<Formula> existential;
  for (const Formula &c : sentence.conjuncts) {
    std::vector<const Formula *> prefix;
    const Formula *body = &c;
    while (body->is_quantifier()) {
      prefix.push_back(body);
      body = &body->children[0];
    }
    if (!body->quantifier_free())
      throw UnsupportedError("nested quantifiers inside a conjunct body");
    using K = Formula::Kind;
    if (prefix.size() == 1 && prefix[0]->kind == K::Forall) {
      universal.push_back(body->substituted(prefix[0]->var, Var::X));
    } else if (prefix.size() == 1) {
      // exists v. psi(v)  ==  forall x exists y. psi(y)
      existential.push_back(body->substituted(prefix[0]->var, Var::Y));
    } else if (prefix.size() == 2 && prefix[0]->kind == K::Forall) {
      Formula f = prefix[0]->var == Var::X ? *body : body->swapped();
      if (prefix[1]->kind == K::Forall)
        universal.push_back(std::move(f));
      else
        existential.push_back(std::move(f));
    } else if (prefix.size() == 2) {
      throw UnsupportedError(
          "a conjunct starting with an existential quantifier followed by "
          "another quantifier is outside the supported fragment");
    } else {
      throw UnsupportedError("quantifier prefix longer than two");
    }
  }

  int fresh = 0;
  for (Formula &psi : existential) {
    bool reusable = psi.kind == Formula::Kind::Atom &&
                    out.vocab[psi.pred].arity == 2 &&
                    psi.args == std::vector<Var>{Var::X, Var::Y};
    if (reusable) {
      out.betas.push_back(psi.pred);
    } else {
      int b = out.vocab.add(out.vocab.fresh_name("beta" + std::to_string(++fresh)),
                            2);
      out.betas.push_back(b);
      out.aux_preds.push_back(b);
      universal.push_back(
          Formula::iff(Formula::atom(b, {Var::X, Var::Y}), psi));
    }
    out.psis.push_back(std::move(psi));
  }
  out.phi = Formula::conj(std::move(universal));
  return out;
}

Sentence snf_to_sentence(const SnfSentence &snf) {
  Sentence s;
  s.vocab = snf.vocab;
  s.conjuncts.push_back(
      Formula::forall(Var::X, Formula::forall(Var::Y, snf.phi)));
  for (int b : snf.betas)
    s.conjuncts.push_back(Formula::forall(
        Var::X, Formula::exists(Var::Y, Formula::atom(b, {Var::X, Var::Y}))));
  return s;
}

Assignment project_model(const Assignment &snf_assignment,
                         const AtomTable &snf_table,
                         const AtomTable &original_table) {
  Assignment out(original_table.num_vars() + 1, -1);
  for (int v = 1; v <= original_table.num_vars(); ++v) {
    const GroundAtom &g = original_table.atom(v);
    out[v] = snf_assignment[snf_table.var(g.pred, g.first, g.second)];
  }
  return out;
}

} // namespace fo2kc
