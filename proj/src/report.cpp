#include "msrs/report.hpp"

#include <json.hpp>
#include <sstream>

namespace msrs {

namespace {

using nlohmann::json;

std::string approx(const IsolatingInterval& I, int digits) { return decimal((I.lo + I.hi) / 2, digits); }

json counts_json(const Counts& c) { return {{"e", c.e}, {"s", c.s}}; }

}  // namespace

int digits_for_width(const Rat& width) {
  int d = 0;
  Rat w = width;
  while (w < 1 && d < 60) {
    w *= 10;
    ++d;
  }
  return d + 1;
}

std::string render_json(const ClassificationResult& r, const Rat& refine_width, bool timing) {
  int digits = digits_for_width(refine_width);
  json j;
  json B = json::array();
  for (const auto& c : r.cp.B.c) B.push_back(c.get_str());
  j["B"] = B;
  json bs = json::array();
  for (size_t k : r.kept) {
    const Candidate& c = r.candidates[k];
    bs.push_back({{"lo", rat_str(c.iv.lo)}, {"hi", rat_str(c.iv.hi)}, {"approx", approx(c.iv, digits)},
                  {"flag", flag_name(c.flag)}});
  }
  j["boundaries"] = bs;
  json bands = json::array();
  for (const auto& b : r.bands) bands.push_back(counts_json(b));
  j["bands"] = bands;

  json diag;
  json cands = json::array();
  for (const auto& c : r.candidates) {
    json e = {{"lo", rat_str(c.iv.lo)},
              {"hi", rat_str(c.iv.hi)},
              {"approx", approx(c.iv, digits)},
              {"factor_degree", r.cp.basis[c.factor].deg()},
              {"flag", flag_name(c.flag)}};
    if (c.at_root) e["at_root"] = counts_json(*c.at_root);
    cands.push_back(e);
  }
  diag["candidates"] = cands;
  json samples = json::array();
  for (size_t g = 0; g < r.samples.size(); ++g)
    samples.push_back({{"sigma", rat_str(r.samples[g])}, {"e", r.sample_counts[g].e}, {"s", r.sample_counts[g].s}});
  diag["samples"] = samples;
  json factors = json::array();
  for (const auto& f : r.cp.basis) factors.push_back(f.deg());
  diag["factor_degrees"] = factors;
  diag["B_degree"] = r.cp.B.deg();
  diag["escape_excluded"] = r.cp.escape_excluded;
  diag["notes"] = r.notes;
  j["diagnostics"] = diag;
  if (timing)
    j["timing"] = {{"reduction", r.timing.reduction},
                   {"elimination", r.timing.elimination},
                   {"isolation", r.timing.isolation},
                   {"counting", r.timing.counting}};
  return j.dump(2);
}

std::string render_text(const ClassificationResult& r, const Rat& refine_width, bool timing) {
  int digits = digits_for_width(refine_width);
  std::ostringstream os;
  os << "B: degree " << r.cp.B.deg() << ", " << r.cp.basis.size() << " coprime factors, " << r.candidates.size()
     << " positive roots\n";
  os << "boundaries:\n";
  if (r.kept.empty()) os << "  none\n";
  for (size_t k : r.kept) {
    const Candidate& c = r.candidates[k];
    os << "  sigma ~ " << approx(c.iv, digits) << "  [" << rat_str(c.iv.lo) << ", " << rat_str(c.iv.hi) << "]  "
       << flag_name(c.flag) << "\n";
  }
  os << "bands:\n";
  for (size_t b = 0; b < r.bands.size(); ++b) {
    std::string lo = b == 0 ? "0" : approx(r.candidates[r.kept[b - 1]].iv, digits);
    std::string hi = b == r.kept.size() ? "inf" : approx(r.candidates[r.kept[b]].iv, digits);
    os << "  (" << lo << ", " << hi << ")  e=" << r.bands[b].e << " s=" << r.bands[b].s << "\n";
  }
  size_t pruned = 0;
  for (const auto& c : r.candidates)
    if (c.flag == BoundaryFlag::pruned) ++pruned;
  if (pruned) os << "pruned roots: " << pruned << "\n";
  for (const auto& n : r.notes) os << "note: " << n << "\n";
  if (timing)
    os << "timing: reduction " << r.timing.reduction << " s, elimination " << r.timing.elimination
       << " s, isolation " << r.timing.isolation << " s, counting " << r.timing.counting << " s\n";
  return os.str();
}

}  // namespace msrs
