using System;
using System.Web.UI;
using Acme.Logging;
using Shop.Business;
using Shop.Data.Entities;
using Shop.Web.Helpers;

namespace Shop.Web.Pages
{
    public partial class Checkout : Page
    {
        private OrderService orders = new OrderService();
        private CartService cart = new CartService();

        protected void btnPay_Click(object sender, EventArgs e)
        {
            int customerId = CurrentCustomerId();
            int orderId = cart.Checkout(customerId);
            ShowConfirmation(orderId);
            Logger.Info("checkout complete");
        }

        private int CurrentCustomerId()
        {
            return SessionStore.GetInt("customer");
        }

        private void ShowConfirmation(int orderId)
        {
            OrderSummary summary = orders.Summarize(orderId);
            Logger.Info(PriceFormatter.Format(summary.Total));
        }
    }
}
