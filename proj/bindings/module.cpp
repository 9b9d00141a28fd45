// Copyright 2026 The ScribeForge Authors. All Rights Reserved.
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

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <string>
#include <variant>

#include "json.hpp"
#include "scribeforge/blot.hpp"
#include "scribeforge/error.hpp"
#include "scribeforge/image.hpp"
#include "scribeforge/segbank.hpp"
#include "scribeforge/stackmix.hpp"
#include "scribeforge/utf8.hpp"

namespace py = pybind11;
using namespace scribeforge;

namespace {

using Bank = std::shared_ptr<const segbank::SegmentBank>;
using U8Array = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;

// Hands the pixel buffer to numpy without copying.
py::array_t<std::uint8_t> to_numpy(LineImage image) {
  auto* owned = new LineImage(std::move(image));
  py::capsule free_when_done(owned, [](void* p) { delete static_cast<LineImage*>(p); });
  return py::array_t<std::uint8_t>(
      {owned->height(), owned->width()},
      {static_cast<py::ssize_t>(owned->width()), static_cast<py::ssize_t>(1)},
      owned->pixels().data(), free_when_done);
}

LineImage from_numpy(const U8Array& array, std::optional<int> width,
                     std::optional<int> height) {
  if (width || height) {
    if (!width || !height) {
      throw py::value_error("width and height must be given together");
    }
    const auto expected = static_cast<py::ssize_t>(*width) * *height;
    if (array.size() != expected) {
      throw py::value_error("image buffer holds " + std::to_string(array.size()) +
                            " bytes, expected width*height = " + std::to_string(*width) +
                            "*" + std::to_string(*height) + " = " +
                            std::to_string(expected));
    }
    return LineImage(*width, *height,
                     std::vector<std::uint8_t>(array.data(), array.data() + array.size()));
  }
  if (array.ndim() != 2) {
    std::string shape;
    for (py::ssize_t i = 0; i < array.ndim(); ++i) {
      shape += (i ? ", " : "") + std::to_string(array.shape(i));
    }
    throw py::value_error("expected a single-channel (height, width) uint8 image, got shape (" +
                          shape + ")");
  }
  const auto h = static_cast<int>(array.shape(0));
  const auto w = static_cast<int>(array.shape(1));
  return LineImage(w, h, std::vector<std::uint8_t>(array.data(), array.data() + array.size()));
}

std::string dict_to_json(const py::dict& d) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [key, value] : d) {
    const auto name = py::cast<std::string>(key);
    if (py::isinstance<py::bool_>(value)) {
      throw py::type_error("parameter '" + name + "' must be a number");
    } else if (py::isinstance<py::int_>(value)) {
      j[name] = py::cast<long long>(value);
    } else if (py::isinstance<py::float_>(value)) {
      j[name] = py::cast<double>(value);
    } else if (py::isinstance<py::list>(value) || py::isinstance<py::tuple>(value)) {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& item : value) {
        if (py::isinstance<py::int_>(item)) arr.push_back(py::cast<long long>(item));
        else arr.push_back(py::cast<double>(item));
      }
      j[name] = std::move(arr);
    } else {
      throw py::type_error("parameter '" + name + "' must be a number or a list of numbers");
    }
  }
  return j.dump();
}

Bank open_bank(const std::string& path) {
  py::gil_scoped_release release;
  return std::make_shared<const segbank::SegmentBank>(segbank::load_bank(path));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Native core of the scribeforge augmentation toolkit";

  py::register_exception<VocabularyError>(m, "VocabularyError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  py::class_<segbank::SegmentBank, std::shared_ptr<segbank::SegmentBank>>(m, "Bank")
      .def_property_readonly("norm_height", &segbank::SegmentBank::norm_height)
      .def_property_readonly("token_count", &segbank::SegmentBank::token_count)
      .def_property_readonly("segment_count", &segbank::SegmentBank::segment_count)
      .def_property_readonly("alphabet",
                             [](const segbank::SegmentBank& b) {
                               return utf8::encode(b.alphabet().symbols());
                             })
      .def("__contains__", [](const segbank::SegmentBank& b, const std::string& token) {
        return b.contains(token);
      })
      .def("__repr__", [](const segbank::SegmentBank& b) {
        return "<scribeforge.Bank tokens=" + std::to_string(b.token_count()) +
               " segments=" + std::to_string(b.segment_count()) +
               " norm_height=" + std::to_string(b.norm_height()) + ">";
      });

  m.def(
      "bank_open",
      [](const std::string& path) {
        return std::const_pointer_cast<segbank::SegmentBank>(open_bank(path));
      },
      py::arg("path"), "Load a segment bank directory once for repeated sampling.");

  m.def(
      "apply_blot",
      [](const U8Array& image, std::optional<py::dict> params, std::uint64_t seed,
         std::optional<int> width, std::optional<int> height) {
        auto input = from_numpy(image, width, height);
        const auto p = params ? blot::BlotParams::from_json(dict_to_json(*params))
                              : blot::BlotParams{};
        LineImage out;
        {
          py::gil_scoped_release release;
          Rng rng(seed);
          out = blot::apply_blot(input, p, rng);
        }
        return to_numpy(std::move(out));
      },
      py::arg("image"), py::arg("params") = py::none(), py::arg("seed") = 0,
      py::kw_only(), py::arg("width") = py::none(), py::arg("height") = py::none(),
      "Draw strikethrough blots on a grayscale line image.\n\n"
      "`image` is a (height, width) uint8 array, or a flat buffer when width and\n"
      "height are given. `params` overrides BlotParams fields by name.");

  m.def(
      "stackmix_line",
      [](const std::string& text, std::variant<std::shared_ptr<segbank::SegmentBank>, std::string> bank,
         std::uint64_t seed, std::optional<py::dict> mix) {
        std::shared_ptr<const segbank::SegmentBank> b;
        if (auto* path = std::get_if<std::string>(&bank)) {
          b = open_bank(*path);
        } else {
          b = std::get<0>(bank);
        }
        const auto mixture = mix ? stackmix::TokenizerMixture::from_json(dict_to_json(*mix))
                                 : stackmix::TokenizerMixture{};
        stackmix::GeneratedLine line;
        {
          py::gil_scoped_release release;
          Rng rng(seed);
          line = stackmix::stackmix_line(text, *b, mixture, rng);
        }
        return py::make_tuple(to_numpy(std::move(line.image)), line.transcript);
      },
      py::arg("text"), py::arg("bank"), py::arg("seed") = 0, py::arg("mix") = py::none(),
      "Render `text` by stacking bank segments; returns (image, transcript).");

  m.def(
      "derive_seed",
      [](std::uint64_t base, std::uint64_t index) { return derive_seed(base, index); },
      py::arg("base"), py::arg("index"),
      "Per-item seed used by the command-line tool for the index-th file or line.");
}
