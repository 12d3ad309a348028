import init, { strata_table, semigroup_profile, fiber_report } from "./pkg/semigroup_census_web.js";

const $ = (id) => document.getElementById(id);

function guarded(target, f) {
  try {
    f();
  } catch (e) {
    target.innerHTML = "";
    const p = document.createElement("p");
    p.className = "error";
    p.textContent = String(e.message ?? e);
    target.append(p);
  }
}

function bars(canvas, values, labels) {
  const ctx = canvas.getContext("2d");
  const { width, height } = canvas;
  ctx.clearRect(0, 0, width, height);
  const top = Math.max(1, ...values);
  const w = width / values.length;
  ctx.font = "11px system-ui";
  ctx.textAlign = "center";
  values.forEach((v, i) => {
    const h = (height - 30) * (v / top);
    ctx.fillStyle = "#4a7bb7";
    ctx.fillRect(i * w + 2, height - 16 - h, w - 4, h);
    ctx.fillStyle = "#222";
    ctx.fillText(labels[i], i * w + w / 2, height - 3);
    ctx.fillText(v, i * w + w / 2, height - 20 - h);
  });
}

function strata() {
  guarded($("strata-table"), () => {
    const t0 = performance.now();
    const { rows } = JSON.parse(strata_table(Number($("genus").value)));
    $("strata-time").textContent = `${(performance.now() - t0).toFixed(0)} ms`;
    const width = Math.max(...rows.map((r) => r.counts.length));
    const head = ["g", ...Array.from({ length: width }, (_, c) => `γ=${c}`), "n"];
    const body = rows.map((r) => [r.genus, ...Array.from({ length: width }, (_, c) => r.counts[c] ?? ""), r.total]);
    const html = [head, ...body]
      .map((cells, i) => `<tr>${cells.map((c) => (i ? `<td>${c}</td>` : `<th>${c}</th>`)).join("")}</tr>`)
      .join("");
    $("strata-table").innerHTML = `<table>${html}</table>`;
    const last = rows[rows.length - 1];
    bars($("strata-plot"), last.counts, last.counts.map((_, c) => `γ=${c}`));
  });
}

function profile() {
  guarded($("profile"), () => {
    $("profile").textContent = JSON.stringify(JSON.parse(semigroup_profile($("generators").value)), null, 2);
  });
}

function fiber() {
  guarded($("fiber"), () => {
    const r = JSON.parse(fiber_report($("gaps").value));
    bars($("fiber-plot"), r.per_i, r.per_i.map((_, i) => `i=${i}`));
    const lines = r.members.map((m) => `${m.semigroup}   B = {${m.closed_set.join(",")}}   ${m.decomposition}`);
    $("fiber").textContent = `base ${r.base.name}, genus ${r.base.genus}: ${r.total} semigroups\n\n${lines.join("\n")}`;
  });
}

await init();
$("run-strata").onclick = strata;
$("run-profile").onclick = profile;
$("run-fiber").onclick = fiber;
strata();
profile();
fiber();
