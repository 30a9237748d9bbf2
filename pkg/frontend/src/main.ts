import { ApiClient } from './api.js';
import { EstimatePanel } from './estimatePanel.js';
import { SimulationPanel } from './simulationPanel.js';

function must<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing #${id}`);
  return el as T;
}

const client = new ApiClient('');
new SimulationPanel(must('simulation-panel'), client).mount();
new EstimatePanel(must('estimate-panel'), client).mount();
