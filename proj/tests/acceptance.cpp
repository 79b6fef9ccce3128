// Copyright 2026 The drmlab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "drmlab/choosers.hpp"
#include "drmlab/license_json.hpp"
#include "drmlab/verifier.hpp"
#include "properties.hpp"
#include "support.hpp"

namespace drmlab {
namespace {

using testing::LoadInstance;
using testing::LoadLicense;
using testing::R;

// Accumulates failed expectations for one criterion.
class Criterion {
 public:
  void Expect(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  void Note(const std::string& note) { notes_.push_back(note); }
  bool ok() const { return failures_.empty(); }
  const std::vector<std::string>& failures() const { return failures_; }
  const std::vector<std::string>& notes() const { return notes_; }

 private:
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

using Body = std::function<void(Criterion&)>;

bool Run(int number, const std::string& title, double budget_s,
         const Body& body) {
  Criterion c;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.Expect(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  std::ostringstream budget;
  budget.precision(3);
  budget << std::fixed << secs << "s of " << budget_s << "s";
  c.Expect(secs < budget_s, "over time budget (" + budget.str() + ")");
  std::cout << (c.ok() ? "PASS" : "FAIL") << " criterion " << number << ": "
            << title << " [" << budget.str() << "]";
  for (const std::string& n : c.notes()) std::cout << "; " << n;
  std::cout << '\n';
  for (const std::string& f : c.failures()) std::cout << "    " << f << '\n';
  return c.ok();
}

AgentState Installed(const std::vector<License>& licenses) {
  AgentState s = InitAgent();
  for (const License& l : licenses) s = Install(s, l);
  return s;
}

const CorpusBounds kCorpus{2, 2, 1, 2, 2, 4};

void Agreement(Criterion& c) {
  const License agreement = LoadLicense("agreement.json");
  const ConstraintState st = FreshConstraintState({agreement});
  const std::set<Right> expected{R("c1", ActionKind::kDisplay),
                                 R("c2", ActionKind::kDisplay),
                                 R("c2", ActionKind::kPrint)};
  c.Expect(PermissionSet({agreement}, st, 0) == expected, "permission set differs");
  c.Expect(Permitted(R("c2", ActionKind::kPrint), {agreement}, st, 0),
           "(c2,print) not permitted");
  c.Expect(!Permitted(R("c1", ActionKind::kPrint), {agreement}, st, 0),
           "(c1,print) permitted");
}

void SongsChoice(Criterion& c) {
  const AgentState s =
      Installed({LoadLicense("songs_l1.json"), LoadLicense("songs_l2.json")});
  const Right a = R("A");
  const Chooser oma = MakeChooser(Algorithm::kOma);
  const Chooser labeled = MakeChooser(Algorithm::kLabeled);
  c.Expect(oma(Usable(s, a), s) == "L1", "baseline did not pick L1");
  c.Expect(labeled(Usable(s, a), s) == "L2", "labeled did not pick L2");
  c.Expect(LostRights(Request(s, a, oma).first) == std::set<Right>{R("B")},
           "baseline loss is not {(B,play)}");
  c.Expect(LostRights(Request(s, a, labeled).first).empty(),
           "labeled chooser lost a right");
}

void Safety(Criterion& c) {
  const std::vector<Instance> corpus = GenerateCorpus(kCorpus);
  std::size_t violations = 0;
  for (const Instance& i : corpus) {
    for (Algorithm algo : {Algorithm::kOma, Algorithm::kLabeled}) {
      if (!CheckSafety(i, MakeChooser(algo)).holds) ++violations;
    }
  }
  c.Expect(violations == 0, std::to_string(violations) + " safety violations");
  c.Note(std::to_string(corpus.size()) + " instances x 2 choosers");

  // Fault injection: the chooser ignores the candidates and returns the
  // last installed license.
  auto faulty = [](const std::set<LicenseId>&, const AgentState& s) {
    return s.licenses.rbegin()->first;
  };
  std::size_t caught = 0;
  for (const Instance& i : corpus) {
    const Verdict v = CheckSafety(i, faulty);
    if (!v.holds) {
      ++caught;
      c.Expect(v.counterexample.has_value(), i.id + ": no counterexample");
    }
  }
  c.Expect(caught > 0, "fault-injected chooser never caught");
  c.Note("faulty chooser caught on " + std::to_string(caught) + " instances");
}

void Liveness(Criterion& c) {
  const Instance songs = LoadInstance("songs_instance.json");
  c.Expect(songs.horizon == 40, "fixture horizon is not 40");
  const Verdict oma = CheckLiveness(songs, MakeChooser(Algorithm::kOma));
  c.Expect(!oma.holds, "baseline liveness holds");
  if (oma.counterexample) {
    const AgentState end = Replay(songs, *oma.counterexample).back();
    c.Expect(ColorOf(end, R("B")) == Color::kWhite,
             "counterexample does not end with (B,play) white");
  } else {
    c.Expect(false, "no counterexample");
  }
  const Verdict labeled = CheckLiveness(songs, MakeChooser(Algorithm::kLabeled));
  c.Expect(labeled.holds, "labeled liveness fails: " + labeled.reason);
}

// Golden aggregate of the first verified run over kCorpus.
const std::size_t kGoldenInstances = 615;
const std::vector<std::string> kGoldenBaselineLoss = {
    "corpus-35",  "corpus-53",  "corpus-56",  "corpus-65",  "corpus-68",
    "corpus-124", "corpus-127", "corpus-136", "corpus-139", "corpus-147",
    "corpus-190", "corpus-193", "corpus-202", "corpus-205", "corpus-307",
    "corpus-358", "corpus-361", "corpus-404", "corpus-407", "corpus-468",
    "corpus-470", "corpus-472", "corpus-474", "corpus-476", "corpus-478",
    "corpus-480", "corpus-506", "corpus-508", "corpus-510", "corpus-512",
    "corpus-514", "corpus-582", "corpus-584", "corpus-586", "corpus-598",
    "corpus-600"};
const std::vector<std::string> kGoldenLabeledLoss = {};

// Two licenses sharing an asset: a multi-asset one spent by a single use
// before a deadline, and a longer-lived count license.
bool SongsShaped(const Instance& i) {
  if (i.licenses.size() != 2) return false;
  auto count_until = [](const License& l) {
    const auto* conj = std::get_if<And>(&l.top);
    if (conj == nullptr || conj->parts.size() != 2) return false;
    const auto* count = std::get_if<Count>(&conj->parts[0]);
    return count != nullptr && count->total == 1 &&
           std::holds_alternative<Until>(conj->parts[1]) &&
           GrantedRights(l).size() > 1;
  };
  for (int k = 0; k < 2; ++k) {
    const License& a = i.licenses[k];
    const License& b = i.licenses[1 - k];
    if (!count_until(a)) continue;
    const auto* count = std::get_if<Count>(&b.top);
    if (count == nullptr || count->total < 2) continue;
    for (const Right& r : GrantedRights(a)) {
      if (GrantedRights(b).contains(r)) return true;
    }
  }
  return false;
}

void LossDominance(Criterion& c) {
  const std::vector<Instance> corpus = GenerateCorpus(kCorpus);
  const Report report = CompareChoosers(corpus);
  c.Expect(report.labeled_subset_of_baseline, "labeled loss not a subset");
  c.Expect(report.strict, "subset is not strict");
  std::set<std::string> labeled(report.labeled_loss.begin(),
                                report.labeled_loss.end());
  bool witness = false;
  for (const Instance& i : corpus) {
    const bool base = std::find(report.baseline_loss.begin(),
                                report.baseline_loss.end(),
                                i.id) != report.baseline_loss.end();
    if (base && !labeled.contains(i.id) && SongsShaped(i)) witness = true;
  }
  c.Expect(witness, "no two-song shaped witness of strictness");
  c.Expect(report.instances == kGoldenInstances, "instance count changed");
  c.Expect(report.baseline_loss == kGoldenBaselineLoss,
           "baseline loss set differs from golden");
  c.Expect(report.labeled_loss == kGoldenLabeledLoss,
           "labeled loss set differs from golden");
  c.Note("baseline loses on " + std::to_string(report.baseline_loss.size()) +
         ", labeled on " + std::to_string(report.labeled_loss.size()));
}

void OracleEquivalence(Criterion& c) {
  std::mt19937 rng(20260101);
  std::size_t mismatches = 0;
  for (int i = 0; i < 1000; ++i) {
    const int n = std::uniform_int_distribution<int>(1, 3)(rng);
    std::vector<License> licenses;
    std::vector<nlohmann::json> docs;
    for (int k = 1; k <= n; ++k) {
      docs.push_back(testing::RandomLicenseJson(rng, "L" + std::to_string(k)));
      licenses.push_back(LicenseFromJson(docs.back()));
    }
    const Tick now = std::uniform_int_distribution<Tick>(0, 10)(rng);
    const ConstraintState st = testing::RandomResidue(rng, licenses, 10);
    if (PermissionSet(licenses, st, now) !=
        testing::OraclePermissionSet(docs, st, now)) {
      ++mismatches;
    }
  }
  c.Expect(mismatches == 0, std::to_string(mismatches) + " of 1000 differ");
}

void RoundTrip(Criterion& c) {
  std::size_t licenses = 0;
  for (const Instance& i : GenerateCorpus(kCorpus)) {
    for (const License& l : i.licenses) {
      ++licenses;
      const std::string text = SerializeLicense(l);
      if (ParseLicense(text) != l || SerializeLicense(ParseLicense(text)) != text) {
        c.Expect(false, i.id + "/" + l.id + " does not round trip");
      }
    }
    const Instance back = ParseInstance(InstanceToJson(i).dump());
    c.Expect(back.licenses == i.licenses && back.horizon == i.horizon,
             i.id + " instance does not round trip");
  }
  c.Note(std::to_string(licenses) + " licenses");
}

void Invariants(Criterion& c) {
  const testing::InvariantReport r = testing::RunInvariants(10000, 42);
  c.Expect(r.cases >= 10000, "too few cases");
  for (const auto& [name, count] : r.failures) {
    c.Expect(false, name + ": " + std::to_string(count) + " failures");
  }
  for (const std::string& e : r.examples) c.Expect(false, e);
  std::size_t checks = 0;
  for (const auto& [name, count] : r.checks) checks += count;
  c.Note(std::to_string(r.cases) + " cases, " + std::to_string(checks) +
         " checks");
}

}  // namespace
}  // namespace drmlab

int main() {
  using namespace drmlab;
  bool ok = true;
  ok &= Run(1, "two-asset agreement permission set", 1, Agreement);
  ok &= Run(2, "two-song choices and losses", 1, SongsChoice);
  ok &= Run(3, "safety over corpus (2,2,1,2,2,4)", 300, Safety);
  ok &= Run(4, "liveness on the two-song instance at horizon 40", 10, Liveness);
  ok &= Run(5, "loss dominance over corpus (2,2,1,2,2,4)", 300, LossDominance);
  ok &= Run(6, "permission set oracle equivalence", 60, OracleEquivalence);
  ok &= Run(7, "round trip over corpus", 60, RoundTrip);
  ok &= Run(8, "invariant suite", 300, Invariants);
  std::cout << (ok ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL") << '\n';
  return ok ? 0 : 1;
}
