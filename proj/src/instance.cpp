#include "nvk/instance.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace nvk {

int VarDomain::interval_containing(int j) const {
  // last interval with lo <= j
  int lo = 0, hi = static_cast<int>(intervals.size()) - 1, found = -1;
  while (lo <= hi) {
    int mid = (lo + hi) / 2;
    if (intervals[static_cast<size_t>(mid)].lo <= j) {
      found = mid;
      lo = mid + 1;
    } else {
      hi = mid - 1;
    }
  }
  if (found >= 0 && intervals[static_cast<size_t>(found)].hi >= j) return found;
  return -1;
}

std::optional<int> Instance::index_of(int lab) const {
  auto it = std::lower_bound(universe.begin(), universe.end(), lab);
  if (it == universe.end() || *it != lab) return std::nullopt;
  return static_cast<int>(it - universe.begin());
}

int Instance::interval_count() const {
  int c = 0;
  for (const VarDomain& d : domains) c += static_cast<int>(d.intervals.size());
  return c;
}

int Instance::domain_pos(int varId) const {
  auto it = std::lower_bound(domains.begin(), domains.end(), varId,
                             [](const VarDomain& d, int id) { return d.id < id; });
  if (it == domains.end() || it->id != varId) return -1;
  return static_cast<int>(it - domains.begin());
}

bool operator==(const Instance& a, const Instance& b) {
  if (a.universe != b.universe || a.budget != b.budget) return false;
  if (a.domains.size() != b.domains.size()) return false;
  for (size_t i = 0; i < a.domains.size(); ++i) {
    if (a.domains[i].name != b.domains[i].name) return false;
    if (a.domains[i].intervals != b.domains[i].intervals) return false;
  }
  return true;
}

void validate_instance(const Instance& inst) {
  for (size_t i = 1; i < inst.universe.size(); ++i)
    if (inst.universe[i - 1] >= inst.universe[i])
      throw InternalError("universe labels not strictly increasing");
  int prevId = -1;
  for (const VarDomain& d : inst.domains) {
    if (d.id <= prevId) throw InternalError("variable ids not ascending");
    prevId = d.id;
    if (d.intervals.empty()) throw InternalError("empty domain for variable " + d.name);
    int prevHi = -2;
    for (const Interval& iv : d.intervals) {
      if (iv.lo > iv.hi) throw InternalError("reversed interval in " + d.name);
      if (iv.lo < 0 || iv.hi >= static_cast<int>(inst.universe.size()))
        throw InternalError("interval endpoint outside universe in " + d.name);
      if (iv.lo <= prevHi + 1)
        throw InternalError("overlapping or adjacent intervals in " + d.name);
      prevHi = iv.hi;
    }
  }
}

namespace {

struct Cursor {
  std::string_view text;
  size_t pos = 0;
  int line = 0;

  // next non-empty line with comments stripped, or nullopt at end
  std::optional<std::string_view> next_line() {
    while (pos < text.size()) {
      size_t eol = text.find('\n', pos);
      if (eol == std::string_view::npos) eol = text.size();
      std::string_view ln = text.substr(pos, eol - pos);
      pos = eol + 1;
      ++line;
      if (size_t hash = ln.find('#'); hash != std::string_view::npos)
        ln = ln.substr(0, hash);
      while (!ln.empty() && (ln.back() == ' ' || ln.back() == '\t' || ln.back() == '\r'))
        ln.remove_suffix(1);
      while (!ln.empty() && (ln.front() == ' ' || ln.front() == '\t'))
        ln.remove_prefix(1);
      if (!ln.empty()) return ln;
    }
    return std::nullopt;
  }
};

std::vector<std::string> split_tokens(std::string_view ln) {
  std::vector<std::string> out;
  size_t i = 0;
  while (i < ln.size()) {
    while (i < ln.size() && (ln[i] == ' ' || ln[i] == '\t')) ++i;
    size_t j = i;
    while (j < ln.size() && ln[j] != ' ' && ln[j] != '\t') ++j;
    if (j > i) out.emplace_back(ln.substr(i, j - i));
    i = j;
  }
  return out;
}

int parse_int(const std::string& tok, int line, const char* what) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError(line, std::string("malformed ") + what + " '" + tok + "'");
  return value;
}

// "<l>-<r>" with possibly negative labels
std::pair<int, int> parse_interval_token(const std::string& tok, int line) {
  const char* begin = tok.data();
  const char* end = tok.data() + tok.size();
  int l = 0, r = 0;
  auto [p1, ec1] = std::from_chars(begin, end, l);
  if (ec1 != std::errc() || p1 == end || *p1 != '-')
    throw ParseError(line, "malformed interval '" + tok + "' (expected l-r)");
  auto [p2, ec2] = std::from_chars(p1 + 1, end, r);
  if (ec2 != std::errc() || p2 != end)
    throw ParseError(line, "malformed interval '" + tok + "' (expected l-r)");
  return {l, r};
}

}  // namespace

Instance parse_instance(std::string_view text) {
  Cursor cur{text};
  Instance inst;

  auto magic = cur.next_line();
  if (!magic || split_tokens(*magic) != std::vector<std::string>{"atmost-nvalue", "1"})
    throw ParseError(cur.line ? cur.line : 1, "expected header 'atmost-nvalue 1'");

  auto valuesLine = cur.next_line();
  if (!valuesLine) throw ParseError(cur.line, "missing 'values' declaration");
  auto vtok = split_tokens(*valuesLine);
  if (vtok.size() >= 2 && vtok[0] == "values" && vtok[1] == "range") {
    if (vtok.size() != 4) throw ParseError(cur.line, "expected 'values range <lo> <hi>'");
    int lo = parse_int(vtok[2], cur.line, "value");
    int hi = parse_int(vtok[3], cur.line, "value");
    if (lo > hi) throw ParseError(cur.line, "empty value range");
    for (int v = lo; v <= hi; ++v) inst.universe.push_back(v);
  } else if (vtok.size() >= 2 && vtok[0] == "values" && vtok[1] == "list") {
    for (size_t i = 2; i < vtok.size(); ++i) {
      int v = parse_int(vtok[i], cur.line, "value");
      if (!inst.universe.empty() && v <= inst.universe.back())
        throw ParseError(cur.line, "value list not strictly increasing");
      inst.universe.push_back(v);
    }
  } else {
    throw ParseError(cur.line, "expected 'values range' or 'values list'");
  }

  auto budgetLine = cur.next_line();
  if (!budgetLine) throw ParseError(cur.line, "missing 'n' declaration");
  auto btok = split_tokens(*budgetLine);
  if (btok.size() != 2 || btok[0] != "n")
    throw ParseError(cur.line, "expected 'n <budget>'");
  inst.budget = parse_int(btok[1], cur.line, "budget");

  int nextId = 0;
  while (auto line = cur.next_line()) {
    auto tok = split_tokens(*line);
    if (tok[0] != "var")
      throw ParseError(cur.line, "expected 'var <name> <l>-<r> ...', got '" + tok[0] + "'");
    if (tok.size() < 2) throw ParseError(cur.line, "variable without a name");
    const std::string& name = tok[1];
    for (const VarDomain& d : inst.domains)
      if (d.name == name) throw ParseError(cur.line, "duplicate variable '" + name + "'");
    if (tok.size() < 3) throw ParseError(cur.line, "empty variable '" + name + "'");

    VarDomain dom;
    dom.id = nextId++;
    dom.name = name;
    int prevHi = -2;
    for (size_t i = 2; i < tok.size(); ++i) {
      auto [l, r] = parse_interval_token(tok[i], cur.line);
      if (l > r)
        throw ParseError(cur.line, "reversed interval " + tok[i] + " in '" + name + "'");
      auto li = inst.index_of(l);
      auto ri = inst.index_of(r);
      if (!li || !ri)
        throw ParseError(cur.line, "interval " + tok[i] + " endpoint outside the universe");
      if (*li <= prevHi + 1)
        throw ParseError(cur.line, "intervals of '" + name +
                                       "' overlap or are adjacent in the universe");
      dom.intervals.push_back({*li, *ri});
      prevHi = *ri;
    }
    inst.domains.push_back(std::move(dom));
  }

  validate_instance(inst);
  return inst;
}

std::string serialize_instance(const Instance& inst) {
  std::ostringstream out;
  out << "atmost-nvalue 1\n";
  bool contiguous = !inst.universe.empty();
  for (size_t i = 1; i < inst.universe.size(); ++i)
    if (inst.universe[i] != inst.universe[i - 1] + 1) contiguous = false;
  if (contiguous) {
    out << "values range " << inst.universe.front() << ' ' << inst.universe.back() << '\n';
  } else {
    out << "values list";
    for (int v : inst.universe) out << ' ' << v;
    out << '\n';
  }
  out << "n " << inst.budget << '\n';
  for (const VarDomain& d : inst.domains) {
    out << "var " << d.name;
    for (const Interval& iv : d.intervals)
      out << ' ' << inst.label(iv.lo) << '-' << inst.label(iv.hi);
    out << '\n';
  }
  return out.str();
}

Instance canonicalize(const Instance& inst) {
  std::vector<char> covered(inst.universe.size(), 0);
  for (const VarDomain& d : inst.domains)
    for (const Interval& iv : d.intervals)
      for (int j = iv.lo; j <= iv.hi; ++j) covered[static_cast<size_t>(j)] = 1;

  std::vector<int> newIndex(inst.universe.size(), -1);
  Instance out;
  out.budget = inst.budget;
  for (size_t j = 0; j < inst.universe.size(); ++j) {
    if (covered[j]) {
      newIndex[j] = static_cast<int>(out.universe.size());
      out.universe.push_back(inst.universe[j]);
    }
  }
  for (const VarDomain& d : inst.domains) {
    VarDomain nd;
    nd.id = d.id;
    nd.name = d.name;
    for (const Interval& iv : d.intervals) {
      Interval mapped{newIndex[static_cast<size_t>(iv.lo)], newIndex[static_cast<size_t>(iv.hi)]};
      // dropping uncovered separators can make previously distinct runs adjacent
      if (!nd.intervals.empty() && nd.intervals.back().hi + 1 >= mapped.lo)
        nd.intervals.back().hi = mapped.hi;
      else
        nd.intervals.push_back(mapped);
    }
    out.domains.push_back(std::move(nd));
  }
  return out;
}

int count_holes(const Instance& inst) {
  int k = 0;
  for (const VarDomain& d : inst.domains) k += d.holes();
  return k;
}

SortedScan sort_intervals(const Instance& inst) {
  SortedScan items;
  items.reserve(static_cast<size_t>(inst.interval_count()));
  for (const VarDomain& d : inst.domains)
    for (const Interval& iv : d.intervals) items.push_back({d.id, iv.lo, iv.hi});
  if (items.empty()) return items;

  const size_t buckets = inst.universe.size();
  auto countingPass = [&](const SortedScan& in, auto key) {
    std::vector<int> count(buckets + 1, 0);
    for (const ScanItem& it : in) ++count[static_cast<size_t>(key(it)) + 1];
    for (size_t b = 1; b <= buckets; ++b) count[b] += count[b - 1];
    SortedScan out(in.size());
    for (const ScanItem& it : in) out[static_cast<size_t>(count[static_cast<size_t>(key(it))]++)] = it;
    return out;
  };
  // stable pass by lo, then by hi: ties end up (hi, lo, var id) ascending
  // because the initial enumeration is already in variable id order
  items = countingPass(items, [](const ScanItem& it) { return it.lo; });
  items = countingPass(items, [](const ScanItem& it) { return it.hi; });
  return items;
}

}  // namespace nvk
