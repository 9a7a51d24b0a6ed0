import init, { trajectoryJson, scanJson, stateJson } from "./pkg/bdcorr_web.js";

const SERIES = [
  ["T", "Tg2", "#1f77b4"],
  ["D", "Dg2", "#d62728"],
  ["C", "Cg2", "#2ca02c"],
];

function values(form) {
  const out = {};
  for (const el of form.elements) {
    if (el.name) out[el.name] = Number(el.value);
  }
  return out;
}

function legend(el) {
  el.innerHTML = SERIES.map(
    ([e, g, color]) => `<span style="color:${color}">${e} solid, ${g} dashed</span>`
  ).join("");
}

// Line plot of every series in `columns` against `xs`; `marks` are x
// positions drawn as vertical grey lines.
function plot(canvas, xs, columns, xLabel, marks = []) {
  const ctx = canvas.getContext("2d");
  const w = canvas.width, h = canvas.height, pad = 40;
  ctx.clearRect(0, 0, w, h);

  const all = SERIES.flatMap(([e, g]) => columns[e].concat(columns[g]));
  const yMax = Math.max(1e-9, ...all) * 1.05;
  const xMin = xs[0], xMax = xs[xs.length - 1];
  const X = (x) => pad + ((x - xMin) / (xMax - xMin || 1)) * (w - 2 * pad);
  const Y = (y) => h - pad - (y / yMax) * (h - 2 * pad);

  ctx.strokeStyle = "#888";
  ctx.fillStyle = "#444";
  ctx.font = "12px system-ui";
  ctx.setLineDash([]);
  ctx.beginPath();
  ctx.moveTo(pad, pad / 2);
  ctx.lineTo(pad, h - pad);
  ctx.lineTo(w - pad / 2, h - pad);
  ctx.stroke();
  for (let i = 0; i <= 4; i++) {
    const y = (yMax * i) / 4;
    ctx.fillText(y.toFixed(2), 4, Y(y) + 4);
    const x = xMin + ((xMax - xMin) * i) / 4;
    ctx.fillText(x.toFixed(2), X(x) - 12, h - pad + 16);
  }
  ctx.fillText(xLabel, w - pad, h - 8);

  ctx.strokeStyle = "#bbb";
  for (const m of marks) {
    ctx.beginPath();
    ctx.moveTo(X(m), pad / 2);
    ctx.lineTo(X(m), h - pad);
    ctx.stroke();
  }

  for (const [e, g, color] of SERIES) {
    for (const [key, dash] of [[e, []], [g, [6, 4]]]) {
      ctx.strokeStyle = color;
      ctx.setLineDash(dash);
      ctx.beginPath();
      columns[key].forEach((y, i) => {
        if (i === 0) ctx.moveTo(X(xs[i]), Y(y));
        else ctx.lineTo(X(xs[i]), Y(y));
      });
      ctx.stroke();
    }
  }
  ctx.setLineDash([]);
}

function showError(el, err) {
  el.className = "error";
  el.textContent = String(err.message ?? err);
}

function updateTrajectory() {
  const v = values(document.getElementById("traj"));
  const msg = document.getElementById("traj-msg");
  const canvas = document.getElementById("traj-plot");
  try {
    const d = JSON.parse(trajectoryJson(v.c1, v.c2, v.c3, v.tau, v.alpha, v.numax, 601));
    const marks = d.crossing !== null && d.crossing <= v.numax ? [d.crossing] : [];
    plot(canvas, d.nu, d.columns, "ν", marks);
    msg.className = "";
    msg.textContent = d.crossing === null
      ? "The dominant coefficient never hands over to c3."
      : `Dominant coefficient hands over to c3 at ν* = ${d.crossing.toFixed(5)}.`;
  } catch (err) {
    canvas.getContext("2d").clearRect(0, 0, canvas.width, canvas.height);
    showError(msg, err);
  }
}

function updateScan() {
  const v = values(document.getElementById("scan"));
  const msg = document.getElementById("scan-msg");
  const canvas = document.getElementById("scan-plot");
  try {
    const d = JSON.parse(scanJson(v.c3, v.radius, Math.round(v.steps)));
    plot(canvas, d.c1, d.columns, "c1");
    const n = d.discord_inversions.length;
    const sample = n ? d.discord_inversions[0] : null;
    msg.className = "";
    msg.textContent =
      `c2 = +√(r² − c1²). ${n} pairs are ordered oppositely by D and D_g` +
      (sample ? ` (e.g. c1 = ${sample.c1_first.toFixed(2)} vs ${sample.c1_second.toFixed(2)})` : "") +
      `; ${d.classical_inversions} such pairs for C and C_g.`;
  } catch (err) {
    canvas.getContext("2d").clearRect(0, 0, canvas.width, canvas.height);
    showError(msg, err);
  }
}

function updateState() {
  const form = document.getElementById("state");
  for (const el of form.querySelectorAll("input")) {
    el.nextElementSibling.value = Number(el.value).toFixed(2);
  }
  const v = values(form);
  const d = JSON.parse(stateJson(v.c1, v.c2, v.c3));
  const eig = d.bell_eigenvalues.map((x) => x.toFixed(3)).join(", ");
  let html = `<p>Bell eigenvalues: ${eig}. `;
  if (!d.physical) {
    document.getElementById("state-out").innerHTML =
      html + `<span class="error">Not a physical state (negative eigenvalue).</span></p>`;
    return;
  }
  html += d.entangled ? "Entangled." : "Separable.";
  html += ` Dominant coefficient: c${d.dominant_index}.</p><table><tr><th></th>`;
  html += SERIES.map(([e]) => `<th>${e}</th>`).join("") + "</tr>";
  for (const [name, pick] of [["entropic", 0], ["geometric ×2", 1]]) {
    html += `<tr><th>${name}</th>`;
    html += SERIES.map((s) => `<td>${d.report[s[pick]][0].toFixed(6)}</td>`).join("");
    html += "</tr>";
  }
  document.getElementById("state-out").innerHTML = html + "</table>";
}

await init();
legend(document.getElementById("traj-legend"));
legend(document.getElementById("scan-legend"));
document.getElementById("traj").addEventListener("input", updateTrajectory);
document.getElementById("scan").addEventListener("input", updateScan);
document.getElementById("state").addEventListener("input", updateState);
updateTrajectory();
updateScan();
updateState();
