#include "meyerkit/svg.hpp"

#include <cstdio>
#include <sstream>

namespace meyerkit {

namespace {

constexpr double kPanel = 480.0;
constexpr double kPad = 40.0;
const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"};

const char* color_of(std::size_t i) { return kPalette[i % (sizeof(kPalette) / sizeof(kPalette[0]))]; }

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

// Affine map from a data rectangle onto a panel.
struct Frame {
  double x0, y0;          // panel origin
  double lox, hix, loy, hiy;
  double w = kPanel, h = kPanel;

  double sx(double v) const { return x0 + (hix > lox ? (v - lox) / (hix - lox) * w : w / 2); }
  double sy(double v) const { return y0 + h - (hiy > loy ? (v - loy) / (hiy - loy) * h : h / 2); }
};

void axes(std::ostringstream& os, const Frame& f, const std::string& label) {
  os << "<rect x=\"" << num(f.x0) << "\" y=\"" << num(f.y0) << "\" width=\"" << num(f.w) << "\" height=\""
     << num(f.h) << "\" fill=\"none\" stroke=\"#888\"/>\n";
  os << "<text x=\"" << num(f.x0) << "\" y=\"" << num(f.y0 - 8) << "\" font-size=\"12\">" << escape(label)
     << "</text>\n";
}

void legend(std::ostringstream& os, const std::vector<std::string>& colors, double x, double y) {
  for (std::size_t i = 0; i < colors.size(); ++i) {
    double yy = y + 16.0 * static_cast<double>(i);
    os << "<circle cx=\"" << num(x) << "\" cy=\"" << num(yy) << "\" r=\"4\" fill=\"" << color_of(i) << "\"/>\n";
    os << "<text x=\"" << num(x + 10) << "\" y=\"" << num(yy + 4) << "\" font-size=\"12\">" << escape(colors[i])
       << "</text>\n";
  }
}

void physical_panel(std::ostringstream& os, const MultiPointSet& P, double x0) {
  const auto& c = P.carrier();
  Frame f{x0, kPad, c[0].lo.to_double(), c[0].hi.to_double(), 0, 1};
  if (P.d() == 2) {
    f.loy = c[1].lo.to_double();
    f.hiy = c[1].hi.to_double();
  }
  axes(os, f, "physical space");
  for (std::size_t i = 0; i < P.color_count(); ++i)
    for (const auto& x : P.points(i)) {
      // In dimension 1 each color gets its own row.
      double y = P.d() == 2 ? f.sy(x[1].to_double())
                            : f.y0 + f.h * static_cast<double>(i + 1) / static_cast<double>(P.color_count() + 1);
      os << "<circle cx=\"" << num(f.sx(x[0].to_double())) << "\" cy=\"" << num(y) << "\" r=\"2\" fill=\""
         << color_of(i) << "\"/>\n";
    }
}

void internal_panel(std::ostringstream& os, const MultiPointSet& P, const CutProjectScheme& S, const WindowSet& W,
                    double x0) {
  // m = 1, d = 1: (physical, internal) plane; m = 2: internal plane.
  const bool strip = S.m() == 1;
  std::vector<Region> regions;
  for (const auto& r : W.regions) regions.push_back(S.restrict_window(r));
  Box bounds;
  for (const auto& r : regions)
    if (auto bb = r.real_bounding_box()) {
      if (bounds.empty()) {
        bounds = *bb;
      } else {
        for (std::size_t k = 0; k < bb->size(); ++k) {
          bounds[k].lo = min(bounds[k].lo, (*bb)[k].lo);
          bounds[k].hi = max(bounds[k].hi, (*bb)[k].hi);
        }
      }
    }
  if (bounds.empty()) bounds = Box(S.m(), Interval{QuadExt(-1), QuadExt(1)});
  Frame f{x0, kPad, 0, 0, 0, 0};
  if (strip) {
    f.lox = P.carrier()[0].lo.to_double();
    f.hix = P.carrier()[0].hi.to_double();
    f.loy = bounds[0].lo.to_double();
    f.hiy = bounds[0].hi.to_double();
  } else {
    f.lox = bounds[0].lo.to_double();
    f.hix = bounds[0].hi.to_double();
    f.loy = bounds[1].lo.to_double();
    f.hiy = bounds[1].hi.to_double();
  }
  double padx = (f.hix - f.lox) * 0.05, pady = (f.hiy - f.loy) * 0.1;
  f.lox -= padx, f.hix += padx, f.loy -= pady, f.hiy += pady;
  axes(os, f, strip ? "star images: physical vs internal" : "star images in the internal plane");

  for (std::size_t i = 0; i < regions.size(); ++i)
    for (const auto& [fin, boxes] : regions[i].fibers())
      for (const auto& b : boxes) {
        double ax = strip ? f.x0 : f.sx(b[0].lo.to_double());
        double bx = strip ? f.x0 + f.w : f.sx(b[0].hi.to_double());
        double ay = f.sy((strip ? b[0].hi : b[1].hi).to_double());
        double by = f.sy((strip ? b[0].lo : b[1].lo).to_double());
        os << "<rect x=\"" << num(ax) << "\" y=\"" << num(ay) << "\" width=\"" << num(bx - ax) << "\" height=\""
           << num(by - ay) << "\" fill=\"" << color_of(i) << "\" fill-opacity=\"0.12\"><title>" << escape(W.colors[i])
           << " " << element_str(fin) << "</title></rect>\n";
      }
  for (std::size_t i = 0; i < P.color_count(); ++i)
    for (const auto& x : P.points(i)) {
      auto z = S.coordinates_in_lattice(x);
      if (!z) continue;
      HPoint h = S.internal(*z);
      double cx = strip ? f.sx(x[0].to_double()) : f.sx(h.real[0].to_double());
      double cy = strip ? f.sy(h.real[0].to_double()) : f.sy(h.real[1].to_double());
      os << "<circle cx=\"" << num(cx) << "\" cy=\"" << num(cy) << "\" r=\"2\" fill=\"" << color_of(i) << "\"/>\n";
    }
}

}  // namespace

std::string svg_figure(const MultiPointSet& P, const std::string& title, const CutProjectScheme* S,
                       const WindowSet* W) {
  if (P.d() != 1 && P.d() != 2) throw InvalidArgument("SVG output supports physical dimension 1 or 2");
  if (P.carrier().empty()) throw InvalidArgument("SVG output needs a carrier");
  const bool second = S && W && ((S->m() == 1 && S->d() == 1) || S->m() == 2);
  double width = kPad * 2 + kPanel + 120 + (second ? kPanel + kPad : 0);
  double height = kPad * 2 + kPanel;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\"" << num(height)
     << "\" viewBox=\"0 0 " << num(width) << " " << num(height) << "\">\n";
  os << "<title>" << escape(title) << "</title>\n";
  physical_panel(os, P, kPad);
  if (second) internal_panel(os, P, *S, *W, kPad * 2 + kPanel);
  legend(os, P.colors(), width - 110, kPad + 10);
  os << "</svg>\n";
  return os.str();
}

}  // namespace meyerkit
