// Demo page wiring: three independent panels over the wasm exports.
// No framework; all drawing is plain 2d-canvas.

import init, {
  particle_wigner_field,
  contraction_distance_curve,
  clebsch_gordan_text,
} from "./pkg/phase_contract_wasm.js";

const $ = (id) => document.getElementById(id);

const FONT = "12px system-ui, sans-serif";
const AXIS = "#444";
const GRID = "#e3e3e3";

// ---------------------------------------------------------------- helpers

function readNumber(id, label) {
  const v = Number($(id).value);
  if (!Number.isFinite(v)) throw `${label} is not a number`;
  return v;
}

function readInt(id, label) {
  const v = readNumber(id, label);
  if (!Number.isInteger(v)) throw `${label} must be an integer`;
  return v;
}

function setStatus(id, text, isError = false) {
  const el = $(id);
  el.textContent = text;
  el.classList.toggle("err", isError);
}

// Diverging map for t in [-1, 1]: blue through white to red.
function divergingColor(t) {
  const c = Math.max(-1, Math.min(1, t));
  const u = Math.round(255 * (1 - Math.abs(c)));
  return c >= 0 ? [255, u, u] : [u, u, 255];
}

// ------------------------------------------------------- Wigner field panel

function stateInputsFollowSelection() {
  const fock = $("state").value === "fock";
  $("fock-n").disabled = !fock;
  $("beta-re").disabled = fock;
  $("beta-im").disabled = fock;
}

function renderField() {
  try {
    const state = $("state").value;
    const betaRe = readNumber("beta-re", "Re beta");
    const betaIm = readNumber("beta-im", "Im beta");
    const fockN = readInt("fock-n", "n");
    const nMax = readInt("n-max", "n_max");
    const qMax = readNumber("q-max", "q_max");
    const grid = readInt("grid-size", "grid");
    if (fockN < 0) throw "n must be non-negative";

    const t0 = performance.now();
    const data = particle_wigner_field(state, betaRe, betaIm, fockN, nMax, qMax, grid);
    const ms = performance.now() - t0;

    let lo = Infinity;
    let hi = -Infinity;
    for (const w of data) {
      if (w < lo) lo = w;
      if (w > hi) hi = w;
    }
    drawHeatmap($("field-canvas"), data, grid, qMax);
    setStatus(
      "field-status",
      `range [${lo.toFixed(4)}, ${hi.toFixed(4)}] over ${grid}×${grid} points — ${ms.toFixed(0)} ms`,
    );
  } catch (e) {
    setStatus("field-status", String(e), true);
  }
}

function drawHeatmap(canvas, data, grid, qMax) {
  const ctx = canvas.getContext("2d");
  const ml = 46;
  const mr = 12;
  const mt = 16;
  const mb = 66;
  const pw = canvas.width - ml - mr;
  const ph = canvas.height - mt - mb;
  ctx.clearRect(0, 0, canvas.width, canvas.height);

  // Field cells on an offscreen canvas, then scaled up. Data is row-major
  // with q as the outer coordinate; the display puts q rightward and p upward.
  const off = document.createElement("canvas");
  off.width = grid;
  off.height = grid;
  const img = off.getContext("2d").createImageData(grid, grid);
  for (let y = 0; y < grid; y++) {
    const ip = grid - 1 - y;
    for (let x = 0; x < grid; x++) {
      const [r, g, b] = divergingColor(data[x * grid + ip] / 2);
      const o = 4 * (y * grid + x);
      img.data[o] = r;
      img.data[o + 1] = g;
      img.data[o + 2] = b;
      img.data[o + 3] = 255;
    }
  }
  off.getContext("2d").putImageData(img, 0, 0);
  ctx.imageSmoothingEnabled = true;
  ctx.drawImage(off, ml, mt, pw, ph);
  ctx.strokeStyle = AXIS;
  ctx.strokeRect(ml + 0.5, mt + 0.5, pw, ph);

  ctx.fillStyle = AXIS;
  ctx.font = FONT;
  ctx.textAlign = "center";
  const fmt = (v) => (Object.is(v, -0) ? "0" : String(v));
  for (const [f, v] of [[0, -qMax], [0.5, 0], [1, qMax]]) {
    ctx.fillText(fmt(v), ml + f * pw, mt + ph + 16);
    ctx.textAlign = "right";
    ctx.fillText(fmt(v), ml - 6, mt + (1 - f) * ph + 4);
    ctx.textAlign = "center";
  }
  ctx.fillText("q", ml + pw / 2, mt + ph + 32);
  ctx.textAlign = "right";
  ctx.fillText("p", ml - 6, mt - 4);

  // Colorbar for the fixed [-2, 2] scale.
  const cbw = 200;
  const cbx = ml + (pw - cbw) / 2;
  const cby = mt + ph + 40;
  for (let i = 0; i < cbw; i++) {
    const [r, g, b] = divergingColor((2 * i) / (cbw - 1) - 1);
    ctx.fillStyle = `rgb(${r},${g},${b})`;
    ctx.fillRect(cbx + i, cby, 1, 10);
  }
  ctx.strokeStyle = AXIS;
  ctx.strokeRect(cbx + 0.5, cby + 0.5, cbw, 10);
  ctx.fillStyle = AXIS;
  ctx.textAlign = "center";
  ctx.fillText("−2", cbx, cby + 22);
  ctx.fillText("0", cbx + cbw / 2, cby + 22);
  ctx.fillText("+2", cbx + cbw, cby + 22);
}

// --------------------------------------------------- contraction curve panel

function renderCurve() {
  try {
    const mask = $("curve-mask").value.trim();
    if (!/^[01]*$/.test(mask)) throw "mask must be a string of 0s and 1s";
    const n = readInt("curve-n", "n");
    if (n < 0) throw "n must be non-negative";
    const ladder = $("curve-ladder").value
      .split(",")
      .map((s) => s.trim())
      .filter((s) => s.length > 0)
      .map((s) => {
        const v = Number(s);
        if (!Number.isInteger(v) || v <= 0) throw `bad ladder entry '${s}'`;
        return v;
      });
    if (ladder.length === 0) throw "ladder is empty";

    const series = [];
    const masked = contraction_distance_curve(mask, n, Uint32Array.from(ladder));
    if (/^0*$/.test(mask)) {
      series.push({ label: "all plus", color: "#1565c0", values: masked });
    } else {
      series.push({ label: `mask ${mask}`, color: "#c62828", values: masked });
      const plus = contraction_distance_curve("", n, Uint32Array.from(ladder));
      series.push({ label: "all plus", color: "#1565c0", values: plus });
    }
    drawCurve($("curve-canvas"), ladder, series);
    const ends = series
      .map((s) => `${s.label}: ${s.values[s.values.length - 1].toExponential(2)}`)
      .join(" · ");
    setStatus("curve-status", `final distance — ${ends}`);
  } catch (e) {
    setStatus("curve-status", String(e), true);
  }
}

function drawCurve(canvas, ladder, series) {
  const ctx = canvas.getContext("2d");
  const ml = 58;
  const mr = 14;
  const mt = 26;
  const mb = 42;
  const pw = canvas.width - ml - mr;
  const ph = canvas.height - mt - mb;
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  ctx.font = FONT;

  const floor = 1e-17;
  const logs = series.flatMap((s) => s.values.map((v) => Math.log10(Math.max(v, floor))));
  let dlo = Math.floor(Math.min(...logs));
  let dhi = Math.ceil(Math.max(...logs));
  if (dhi === dlo) dhi = dlo + 1;
  const xs = ladder.map(Math.log10);
  let xlo = Math.min(...xs);
  let xhi = Math.max(...xs);
  if (xhi === xlo) {
    xlo -= 0.5;
    xhi += 0.5;
  }
  const px = (lx) => ml + ((lx - xlo) / (xhi - xlo)) * pw;
  const py = (ly) => mt + ((dhi - ly) / (dhi - dlo)) * ph;

  // Decade gridlines with labels, then the frame.
  for (let d = dlo; d <= dhi; d++) {
    const y = py(d);
    ctx.strokeStyle = GRID;
    ctx.beginPath();
    ctx.moveTo(ml, y);
    ctx.lineTo(ml + pw, y);
    ctx.stroke();
    ctx.fillStyle = AXIS;
    ctx.textAlign = "right";
    ctx.fillText(`1e${d}`, ml - 6, y + 4);
  }
  ctx.strokeStyle = AXIS;
  ctx.strokeRect(ml + 0.5, mt + 0.5, pw, ph);
  ctx.fillStyle = AXIS;
  ctx.textAlign = "center";
  for (let i = 0; i < ladder.length; i++) {
    const x = px(xs[i]);
    ctx.strokeStyle = GRID;
    ctx.beginPath();
    ctx.moveTo(x, mt);
    ctx.lineTo(x, mt + ph);
    ctx.stroke();
    ctx.fillStyle = AXIS;
    ctx.fillText(String(ladder[i]), x, mt + ph + 16);
  }
  ctx.fillText("2s", ml + pw / 2, mt + ph + 32);
  ctx.textAlign = "left";
  ctx.fillText("|S − 2|", ml, mt - 10);

  for (const s of series) {
    ctx.strokeStyle = s.color;
    ctx.fillStyle = s.color;
    ctx.lineWidth = 1.6;
    ctx.beginPath();
    s.values.forEach((v, i) => {
      const x = px(xs[i]);
      const y = py(Math.log10(Math.max(v, floor)));
      if (i === 0) ctx.moveTo(x, y);
      else ctx.lineTo(x, y);
    });
    ctx.stroke();
    ctx.lineWidth = 1;
    s.values.forEach((v, i) => {
      ctx.beginPath();
      ctx.arc(px(xs[i]), py(Math.log10(Math.max(v, floor))), 3, 0, 2 * Math.PI);
      ctx.fill();
    });
  }

  // Legend, top right inside the frame.
  ctx.textAlign = "left";
  series.forEach((s, i) => {
    const y = mt + 14 + 16 * i;
    ctx.strokeStyle = s.color;
    ctx.lineWidth = 1.6;
    ctx.beginPath();
    ctx.moveTo(ml + pw - 150, y - 4);
    ctx.lineTo(ml + pw - 132, y - 4);
    ctx.stroke();
    ctx.fillStyle = AXIS;
    ctx.fillText(s.label, ml + pw - 126, y);
  });
  ctx.lineWidth = 1;
}

// --------------------------------------------------------- coupling panel

// "3/2", "-1/2", "0.5", "2" -> doubled integer.
function parseHalf(text, label) {
  const t = text.trim();
  const frac = t.match(/^([+-]?\d+)\s*\/\s*([12])$/);
  if (frac) {
    const num = Number(frac[1]);
    return frac[2] === "1" ? 2 * num : num;
  }
  const v = Number(t);
  if (t === "" || !Number.isFinite(v)) throw `${label}: not a half-integer`;
  const doubled = 2 * v;
  if (Math.abs(doubled - Math.round(doubled)) > 1e-9) {
    throw `${label}: not a half-integer`;
  }
  return Math.round(doubled);
}

function renderCoupling() {
  try {
    const arg = (id, label) => parseHalf($(id).value, label);
    const text = clebsch_gordan_text(
      arg("cg-j1", "j1"),
      arg("cg-m1", "m1"),
      arg("cg-j2", "j2"),
      arg("cg-m2", "m2"),
      arg("cg-j", "j"),
      arg("cg-m", "m"),
    );
    setStatus("cg-out", text);
  } catch (e) {
    setStatus("cg-out", String(e), true);
  }
}

// ----------------------------------------------------------------- startup

function start() {
  $("state").addEventListener("change", stateInputsFollowSelection);
  $("field-run").addEventListener("click", renderField);
  $("curve-run").addEventListener("click", renderCurve);
  $("cg-run").addEventListener("click", renderCoupling);
  stateInputsFollowSelection();
  renderField();
  renderCurve();
  renderCoupling();
}

init().then(start).catch((e) => {
  $("boot-error").textContent =
    "Failed to load the wasm module. Build it first:\n" +
    "  wasm-pack build crates/wasm --target web --out-dir www/pkg\n" +
    `(${e})`;
});
